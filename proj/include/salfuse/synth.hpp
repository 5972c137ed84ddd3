#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "salfuse/features.hpp"
#include "salfuse/gaze.hpp"

namespace salfuse {

// Per-feature map layouts for generated scenes.
struct UniformLayout {};
struct CenterBiasLayout {
    double sigma_x_deg = 2.3;
    double sigma_y_deg = 1.9;
};
struct BlobLayout {
    double x_px = 0.0;
    double y_px = 0.0;
    double sigma_deg = 1.8;
};
struct MovingBlobLayout {
    double x0_px = 0.0;
    double y0_px = 0.0;
    double vx_px = 1.0;  // per frame; the trajectory reflects off frame borders
    double vy_px = 0.0;
    double sigma_deg = 1.5;
};
struct BoxLayout {
    int x = 0;
    int y = 0;
    int w = 1;
    int h = 1;
    double blur_sigma_deg = 0.5;
};

using FeatureLayout =
    std::variant<UniformLayout, CenterBiasLayout, BlobLayout, MovingBlobLayout, BoxLayout>;

// Ground-truth description of one synthetic video: feature layouts plus the
// per-frame generating mixture.
struct SyntheticSpec {
    SceneGeometry geometry;
    int n_frames = 1;
    std::vector<std::string> feature_names;
    std::vector<FeatureLayout> layouts;
    std::vector<std::vector<double>> weight_schedule;  // n_frames x K, proper mixtures
    int n_observers = 15;
    std::uint64_t seed = 0;

    void validate() const;
};

// Isotropic Gaussian blob (sigma in degrees), normalized to a pdf.
DensityMap gaussian_blob_map(const SceneGeometry& geometry, double cx_px, double cy_px,
                             double sigma_deg);

// Deterministic function of the spec; time-independent layouts share storage.
FeatureStack make_synthetic_stack(const SyntheticSpec& spec);

// Pearson correlation between the pixel values of two maps.
double map_correlation(const DensityMap& a, const DensityMap& b);

// i.i.d. draws from sum_k w_k M_k(x): categorical feature choice, then
// categorical pixel choice, pixel coordinates. Deterministic given the seed.
std::vector<Point> sample_fixations(const FeatureStack& stack, int frame,
                                    std::span<const double> weights, int n, std::uint64_t seed);

// Full observer table for one video: n_observers draws per frame, streams
// derived per frame so parallel use stays deterministic.
GazeTable sample_gaze_table(const FeatureStack& stack, const SyntheticSpec& spec,
                            const std::string& video_id);

// Five-feature layout (static, dynamic, center_bias, uniform, faces) with
// seeded, well-separated placements; the weight schedule is left empty.
SyntheticSpec standard_layout_spec(const SceneGeometry& geometry, int n_frames, int n_observers,
                                   std::uint64_t seed);

}  // namespace salfuse
