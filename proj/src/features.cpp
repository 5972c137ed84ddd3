#include "salfuse/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace salfuse {

void GaborBankSpec::validate() const {
    if (n_orientations < 2) throw std::invalid_argument("GaborBankSpec: need >= 2 orientations");
    if (n_scales < 1) throw std::invalid_argument("GaborBankSpec: need >= 1 scale");
    if (static_cast<int>(wavelengths_px.size()) != n_scales)
        throw std::invalid_argument("GaborBankSpec: one wavelength per scale");
    for (std::size_t i = 0; i < wavelengths_px.size(); ++i) {
        if (!(wavelengths_px[i] > 0.0))
            throw std::invalid_argument("GaborBankSpec: wavelengths must be positive");
        if (i > 0 && !(wavelengths_px[i] > wavelengths_px[i - 1]))
            throw std::invalid_argument("GaborBankSpec: wavelengths must be strictly increasing");
    }
    if (!(bandwidth_octaves > 0.0)) throw std::invalid_argument("GaborBankSpec: bandwidth must be positive");
}

FeatureStack::FeatureStack(SceneGeometry geometry, std::vector<std::string> names, int n_frames)
    : geometry_(geometry), names_(std::move(names)), n_frames_(n_frames) {
    geometry_.validate();
    if (n_frames_ < 1) throw std::invalid_argument("FeatureStack: need >= 1 frame");
    if (names_.empty()) throw std::invalid_argument("FeatureStack: need >= 1 feature");
    slot_to_pool_.assign(static_cast<std::size_t>(n_frames_) * names_.size(), -1);
}

int FeatureStack::feature_index(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return -1;
}

std::size_t FeatureStack::slot(int frame, int feature) const {
    if (frame < 0 || frame >= n_frames_ || feature < 0 || feature >= n_features())
        throw std::out_of_range("FeatureStack: frame/feature out of range");
    return static_cast<std::size_t>(frame) * names_.size() + feature;
}

const DensityMap& FeatureStack::map(int frame, int feature) const {
    const std::int32_t idx = slot_to_pool_[slot(frame, feature)];
    if (idx < 0) throw std::logic_error("FeatureStack: map not assigned");
    return pool_[static_cast<std::size_t>(idx)];
}

const DensityMap& FeatureStack::map(int frame, const std::string& name) const {
    const int f = feature_index(name);
    if (f < 0) throw Error(Errc::BadInput, "feature `" + name + "` not in stack");
    return map(frame, f);
}

std::vector<const DensityMap*> FeatureStack::frame_slice(int frame) const {
    std::vector<const DensityMap*> out;
    out.reserve(names_.size());
    for (int k = 0; k < n_features(); ++k) out.push_back(&map(frame, k));
    return out;
}

void FeatureStack::set_map(int frame, int feature, DensityMap m) {
    if (m.geometry != geometry_)
        throw Error(Errc::GeometryMismatch, "map geometry differs from stack geometry");
    pool_.push_back(std::move(m));
    slot_to_pool_[slot(frame, feature)] = static_cast<std::int32_t>(pool_.size() - 1);
}

void FeatureStack::set_time_independent_map(int feature, DensityMap m) {
    if (m.geometry != geometry_)
        throw Error(Errc::GeometryMismatch, "map geometry differs from stack geometry");
    pool_.push_back(std::move(m));
    const std::int32_t idx = static_cast<std::int32_t>(pool_.size() - 1);
    for (int frame = 0; frame < n_frames_; ++frame) slot_to_pool_[slot(frame, feature)] = idx;
}

bool FeatureStack::complete() const {
    return std::all_of(slot_to_pool_.begin(), slot_to_pool_.end(),
                       [](std::int32_t i) { return i >= 0; });
}

DensityMap center_bias_map(const SceneGeometry& geometry, double sigma_x_deg, double sigma_y_deg) {
    geometry.validate();
    if (!(sigma_x_deg > 0.0) || !(sigma_y_deg > 0.0))
        throw std::invalid_argument("center_bias_map: sigmas must be > 0");
    const double cx = (geometry.width_px - 1) / 2.0;
    const double cy = (geometry.height_px - 1) / 2.0;
    const double inv_ppd_x = 1.0 / geometry.px_per_deg_x();
    const double inv_ppd_y = 1.0 / geometry.px_per_deg_y();
    std::vector<double> grid(static_cast<std::size_t>(geometry.width_px) * geometry.height_px);
    std::size_t i = 0;
    for (int y = 0; y < geometry.height_px; ++y) {
        const double dy_deg = (y - cy) * inv_ppd_y;
        const double ey = dy_deg * dy_deg / (2.0 * sigma_y_deg * sigma_y_deg);
        for (int x = 0; x < geometry.width_px; ++x, ++i) {
            const double dx_deg = (x - cx) * inv_ppd_x;
            grid[i] = std::exp(-(dx_deg * dx_deg / (2.0 * sigma_x_deg * sigma_x_deg) + ey));
        }
    }
    return normalize_to_pdf(std::move(grid), geometry);
}

DensityMap uniform_map(const SceneGeometry& geometry) {
    geometry.validate();
    const std::size_t n = static_cast<std::size_t>(geometry.width_px) * geometry.height_px;
    return DensityMap{geometry, std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

namespace {

void check_raster(const Raster& r, const SceneGeometry& g, const char* what) {
    if (r.width != g.width_px || r.height != g.height_px ||
        r.values.size() != static_cast<std::size_t>(r.width) * r.height)
        throw Error(Errc::DimensionMismatch, std::string(what) + " does not match geometry");
}

// Separable Gaussian blur, replicate border, kernel truncated at 4 sigma.
std::vector<double> gaussian_blur(const std::vector<double>& in, int w, int h, double sigma_px) {
    const int radius = std::max(1, static_cast<int>(std::ceil(4.0 * sigma_px)));
    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    const double inv_two_var = 1.0 / (2.0 * sigma_px * sigma_px);
    for (int i = -radius; i <= radius; ++i)
        kernel[static_cast<std::size_t>(i + radius)] = std::exp(-i * i * inv_two_var);

    std::vector<double> tmp(in.size()), out(in.size());
    auto clampi = [](int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[static_cast<std::size_t>(i + radius)] *
                       in[static_cast<std::size_t>(y) * w + clampi(x + i, w - 1)];
            tmp[static_cast<std::size_t>(y) * w + x] = acc;
        }
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[static_cast<std::size_t>(i + radius)] *
                       tmp[static_cast<std::size_t>(clampi(y + i, h - 1)) * w + x];
            out[static_cast<std::size_t>(y) * w + x] = acc;
        }
    return out;
}

struct Kernel2D {
    int radius = 0;
    std::vector<double> weights;  // (2r+1)^2, zero mean
};

// Even-phase Gabor with isotropic envelope. The mean is subtracted so the
// kernel has exactly zero DC response; with full-kernel (replicate) border
// handling this makes the response invariant to luma offsets.
Kernel2D make_gabor(double wavelength_px, double theta, double bandwidth_octaves) {
    const double two_b = std::pow(2.0, bandwidth_octaves);
    const double sigma = wavelength_px * (1.0 / std::numbers::pi) *
                         std::sqrt(std::numbers::ln2 / 2.0) * (two_b + 1.0) / (two_b - 1.0);
    Kernel2D k;
    k.radius = std::max(2, static_cast<int>(std::ceil(3.0 * sigma)));
    const int side = 2 * k.radius + 1;
    k.weights.resize(static_cast<std::size_t>(side) * side);
    const double inv_two_var = 1.0 / (2.0 * sigma * sigma);
    const double freq = 2.0 * std::numbers::pi / wavelength_px;
    const double ct = std::cos(theta), st = std::sin(theta);
    double sum = 0.0;
    std::size_t i = 0;
    for (int v = -k.radius; v <= k.radius; ++v)
        for (int u = -k.radius; u <= k.radius; ++u, ++i) {
            const double along = u * ct + v * st;
            const double w = std::exp(-(u * u + v * v) * inv_two_var) * std::cos(freq * along);
            k.weights[i] = w;
            sum += w;
        }
    const double mean = sum / static_cast<double>(k.weights.size());
    for (double& w : k.weights) w -= mean;
    return k;
}

// Dense 2D convolution with replicate borders; the kernel is always fully
// evaluated so its zero mean is preserved at the edges.
std::vector<double> convolve(const std::vector<double>& in, int w, int h, const Kernel2D& k) {
    std::vector<double> out(in.size(), 0.0);
    const int r = k.radius;
    auto clampi = [](int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            std::size_t ki = 0;
            for (int v = -r; v <= r; ++v) {
                const double* row = in.data() + static_cast<std::size_t>(clampi(y + v, h - 1)) * w;
                for (int u = -r; u <= r; ++u, ++ki) acc += k.weights[ki] * row[clampi(x + u, w - 1)];
            }
            out[static_cast<std::size_t>(y) * w + x] = acc;
        }
    return out;
}

}  // namespace

FlaggedMap face_map(const Raster& mask, const SceneGeometry& geometry, double blur_sigma_deg) {
    geometry.validate();
    check_raster(mask, geometry, "face mask");
    std::vector<double> grid = mask.values;
    double positive = 0.0;
    for (double& v : grid) {
        if (v < 0.0) v = 0.0;
        positive += v;
    }
    if (!(positive > 0.0))
        return {uniform_map(geometry), MapFlag::EmptyMask};
    if (blur_sigma_deg > 0.0) {
        const double sigma_px = deg_to_px(blur_sigma_deg, Axis::Horizontal, geometry);
        grid = gaussian_blur(grid, geometry.width_px, geometry.height_px, sigma_px);
    }
    return {normalize_to_pdf(std::move(grid), geometry), MapFlag::None};
}

FlaggedMap static_saliency(const Raster& luma, const SceneGeometry& geometry,
                           const GaborBankSpec& spec) {
    geometry.validate();
    spec.validate();
    check_raster(luma, geometry, "luma frame");
    const int w = geometry.width_px, h = geometry.height_px;

    double luma_scale = 0.0;
    for (double v : luma.values) luma_scale = std::max(luma_scale, std::abs(v));

    std::vector<double> acc(luma.values.size(), 0.0);
    for (int s = 0; s < spec.n_scales; ++s) {
        for (int o = 0; o < spec.n_orientations; ++o) {
            const double theta = std::numbers::pi * o / spec.n_orientations;
            const Kernel2D k = make_gabor(spec.wavelengths_px[static_cast<std::size_t>(s)], theta,
                                          spec.bandwidth_octaves);
            std::vector<double> resp = convolve(luma.values, w, h, k);
            double peak = 0.0;
            for (double& v : resp) {
                v = std::abs(v);
                peak = std::max(peak, v);
            }
            // Flat response for this filter (within numeric noise of the
            // zero-DC kernel): contributes nothing.
            if (peak <= 1e-9 * std::max(1.0, luma_scale)) continue;
            const double inv_peak = 1.0 / peak;
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += resp[i] * resp[i] * inv_peak;
        }
    }

    double peak = 0.0;
    for (double v : acc) peak = std::max(peak, v);
    if (peak <= 1e-12 * std::max(1.0, luma_scale))
        return {uniform_map(geometry), MapFlag::FlatInput};
    return {normalize_to_pdf(std::move(acc), geometry), MapFlag::None};
}

FlaggedMap dynamic_saliency(std::span<const Raster> frames, const SceneGeometry& geometry) {
    geometry.validate();
    if (frames.size() != 5)
        throw std::invalid_argument("dynamic_saliency: exactly 5 frames required");
    for (const Raster& f : frames) check_raster(f, geometry, "luma frame");

    const std::size_t n = frames[0].values.size();
    // Four adjacent-pair differences plus the centered estimate at the middle
    // frame; five maps give an odd-count median, which zeroes any change that
    // appears in the middle frame only.
    std::vector<std::vector<double>> diffs;
    diffs.reserve(5);
    for (int t = 1; t < 5; ++t) {
        std::vector<double> d(n);
        for (std::size_t i = 0; i < n; ++i)
            d[i] = std::abs(frames[t].values[i] - frames[t - 1].values[i]);
        diffs.push_back(std::move(d));
    }
    {
        std::vector<double> d(n);
        for (std::size_t i = 0; i < n; ++i)
            d[i] = 0.5 * std::abs(frames[3].values[i] - frames[1].values[i]);
        diffs.push_back(std::move(d));
    }

    std::vector<double> med(n);
    double v[5];
    for (std::size_t i = 0; i < n; ++i) {
        for (int j = 0; j < 5; ++j) v[j] = diffs[static_cast<std::size_t>(j)][i];
        std::nth_element(v, v + 2, v + 5);
        med[i] = v[2];
    }

    double peak = 0.0;
    for (double m : med) peak = std::max(peak, m);
    if (!(peak > 0.0))
        return {uniform_map(geometry), MapFlag::StaticWindow};
    return {normalize_to_pdf(std::move(med), geometry), MapFlag::None};
}

}  // namespace salfuse
