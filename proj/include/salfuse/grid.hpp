#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "salfuse/error.hpp"
#include "salfuse/geometry.hpp"

namespace salfuse {

// Plain W x H grid of reals, row-major, (column x, row y), origin top-left.
// Used for luma frames and face masks; carries no density semantics.
struct Raster {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

Raster make_raster(int width, int height, double fill = 0.0);

// Non-negative grid normalized to a probability density over pixels.
// Same storage convention as Raster. Values are only guaranteed to sum to 1
// when produced by normalize_to_pdf (maps loaded from 32-bit files may be a
// rounding error away).
struct DensityMap {
    SceneGeometry geometry;
    std::vector<double> values;

    int width() const { return geometry.width_px; }
    int height() const { return geometry.height_px; }
    std::size_t size() const { return values.size(); }
    double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width() + x]; }
    double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width() + x]; }
};

// Clamps negatives to zero and rescales to unit total mass.
// Throws Error(AllZeroMap) when no positive mass remains.
DensityMap normalize_to_pdf(std::vector<double> raw, const SceneGeometry& geometry);
DensityMap normalize_to_pdf(DensityMap map);

double total_mass(const DensityMap& map);
std::size_t argmax_index(std::span<const double> values);

// Block-averages d x d pixel blocks and renormalizes; d must divide both dims.
DensityMap block_downsample(const DensityMap& map, int factor);

// Min-max rescaling to [0,1]. All-equal input maps to all-zero when the value
// is zero and to all-one otherwise.
std::vector<double> normalize_weights(std::span<const double> beta);

// Named signed coefficients over a feature set plus their [0,1] form.
struct WeightVector {
    std::vector<std::string> names;
    std::vector<double> beta;
    std::vector<double> beta_norm;

    std::size_t size() const { return names.size(); }
};

WeightVector make_weight_vector(std::vector<std::string> names, std::vector<double> beta);

}  // namespace salfuse
