#include "salfuse/grid.hpp"

#include <algorithm>
#include <cmath>

namespace salfuse {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::AllZeroMap: return "AllZeroMap";
        case Errc::MissingHeader: return "MissingHeader";
        case Errc::NoValidPositions: return "NoValidPositions";
        case Errc::NoValidFixations: return "NoValidFixations";
        case Errc::BadMagic: return "BadMagic";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::TruncatedStream: return "TruncatedStream";
        case Errc::RankDeficient: return "RankDeficient";
        case Errc::ZeroResidual: return "ZeroResidual";
        case Errc::DegeneratePosition: return "DegeneratePosition";
        case Errc::NoGazeData: return "NoGazeData";
        case Errc::EmptyCategory: return "EmptyCategory";
        case Errc::GeometryMismatch: return "GeometryMismatch";
        case Errc::BadInput: return "BadInput";
    }
    return "UnknownError";
}

const char* map_flag_name(MapFlag f) {
    switch (f) {
        case MapFlag::None: return "none";
        case MapFlag::EmptyMask: return "empty_mask";
        case MapFlag::FlatInput: return "flat_input";
        case MapFlag::StaticWindow: return "static_window";
    }
    return "unknown";
}

Raster make_raster(int width, int height, double fill) {
    Raster r;
    r.width = width;
    r.height = height;
    r.values.assign(static_cast<std::size_t>(width) * height, fill);
    return r;
}

DensityMap normalize_to_pdf(std::vector<double> raw, const SceneGeometry& geometry) {
    geometry.validate();
    const std::size_t n = static_cast<std::size_t>(geometry.width_px) * geometry.height_px;
    if (raw.size() != n)
        throw Error(Errc::DimensionMismatch, "grid size does not match geometry");
    double sum = 0.0;
    for (double& v : raw) {
        if (v < 0.0) v = 0.0;
        sum += v;
    }
    if (!(sum > 0.0))
        throw Error(Errc::AllZeroMap, "no positive mass to normalize");
    const double inv = 1.0 / sum;
    for (double& v : raw) v *= inv;
    return DensityMap{geometry, std::move(raw)};
}

DensityMap normalize_to_pdf(DensityMap map) {
    return normalize_to_pdf(std::move(map.values), map.geometry);
}

double total_mass(const DensityMap& map) {
    double sum = 0.0;
    for (double v : map.values) sum += v;
    return sum;
}

std::size_t argmax_index(std::span<const double> values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best]) best = i;
    return best;
}

DensityMap block_downsample(const DensityMap& map, int factor) {
    if (factor == 1) return map;
    const SceneGeometry low = downsampled(map.geometry, factor);
    std::vector<double> out(static_cast<std::size_t>(low.width_px) * low.height_px, 0.0);
    for (int y = 0; y < map.height(); ++y) {
        const int ly = y / factor;
        for (int x = 0; x < map.width(); ++x)
            out[static_cast<std::size_t>(ly) * low.width_px + x / factor] += map.at(x, y);
    }
    const double scale = 1.0 / (static_cast<double>(factor) * factor);
    for (double& v : out) v *= scale;
    return normalize_to_pdf(std::move(out), low);
}

std::vector<double> normalize_weights(std::span<const double> beta) {
    if (beta.empty())
        throw std::invalid_argument("normalize_weights: empty input");
    const auto [lo_it, hi_it] = std::minmax_element(beta.begin(), beta.end());
    const double lo = *lo_it, hi = *hi_it;
    std::vector<double> out(beta.size());
    if (hi == lo) {
        std::fill(out.begin(), out.end(), hi == 0.0 ? 0.0 : 1.0);
        return out;
    }
    // plain division so the maximum maps to exactly 1
    for (std::size_t i = 0; i < beta.size(); ++i) out[i] = (beta[i] - lo) / (hi - lo);
    return out;
}

WeightVector make_weight_vector(std::vector<std::string> names, std::vector<double> beta) {
    if (names.size() != beta.size())
        throw std::invalid_argument("WeightVector: names/beta length mismatch");
    WeightVector w;
    w.beta_norm = normalize_weights(beta);
    w.names = std::move(names);
    w.beta = std::move(beta);
    return w;
}

}  // namespace salfuse
