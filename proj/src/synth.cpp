#include "salfuse/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "salfuse/rng.hpp"

namespace salfuse {

void SyntheticSpec::validate() const {
    geometry.validate();
    if (n_frames < 1) throw std::invalid_argument("SyntheticSpec: need >= 1 frame");
    if (feature_names.empty() || feature_names.size() != layouts.size())
        throw std::invalid_argument("SyntheticSpec: need one layout per feature");
    if (static_cast<int>(weight_schedule.size()) != n_frames)
        throw std::invalid_argument("SyntheticSpec: need one weight row per frame");
    for (const auto& row : weight_schedule) {
        if (row.size() != feature_names.size())
            throw std::invalid_argument("SyntheticSpec: weight row length mismatch");
        double sum = 0.0;
        for (double w : row) {
            if (w < 0.0) throw std::invalid_argument("SyntheticSpec: negative weight");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("SyntheticSpec: weights must sum to 1");
    }
    if (n_observers < 1) throw std::invalid_argument("SyntheticSpec: need >= 1 observer");
}

DensityMap gaussian_blob_map(const SceneGeometry& geometry, double cx_px, double cy_px,
                             double sigma_deg) {
    geometry.validate();
    if (!(sigma_deg > 0.0)) throw std::invalid_argument("gaussian_blob_map: sigma must be > 0");
    const double inv_ppd_x = 1.0 / geometry.px_per_deg_x();
    const double inv_ppd_y = 1.0 / geometry.px_per_deg_y();
    const double inv_two_var = 1.0 / (2.0 * sigma_deg * sigma_deg);
    std::vector<double> grid(static_cast<std::size_t>(geometry.width_px) * geometry.height_px);
    std::size_t i = 0;
    for (int y = 0; y < geometry.height_px; ++y) {
        const double dy = (y - cy_px) * inv_ppd_y;
        for (int x = 0; x < geometry.width_px; ++x, ++i) {
            const double dx = (x - cx_px) * inv_ppd_x;
            grid[i] = std::exp(-(dx * dx + dy * dy) * inv_two_var);
        }
    }
    return normalize_to_pdf(std::move(grid), geometry);
}

namespace {

// Reflects a coordinate into [lo, hi] (triangle-wave fold).
double reflect_into(double v, double lo, double hi) {
    const double span = hi - lo;
    if (span <= 0.0) return lo;
    double t = std::fmod(v - lo, 2.0 * span);
    if (t < 0.0) t += 2.0 * span;
    return lo + (t <= span ? t : 2.0 * span - t);
}

DensityMap box_map(const SceneGeometry& g, const BoxLayout& box) {
    Raster mask = make_raster(g.width_px, g.height_px);
    for (int y = std::max(0, box.y); y < std::min(g.height_px, box.y + box.h); ++y)
        for (int x = std::max(0, box.x); x < std::min(g.width_px, box.x + box.w); ++x)
            mask.at(x, y) = 1.0;
    FlaggedMap fm = face_map(mask, g, box.blur_sigma_deg);
    if (fm.flag != MapFlag::None)
        throw std::invalid_argument("SyntheticSpec: box layout lies off-screen");
    return std::move(fm.map);
}

}  // namespace

FeatureStack make_synthetic_stack(const SyntheticSpec& spec) {
    spec.validate();
    const SceneGeometry& g = spec.geometry;
    FeatureStack stack(g, spec.feature_names, spec.n_frames);
    for (std::size_t k = 0; k < spec.layouts.size(); ++k) {
        const int kf = static_cast<int>(k);
        const FeatureLayout& layout = spec.layouts[k];
        if (std::holds_alternative<UniformLayout>(layout)) {
            stack.set_time_independent_map(kf, uniform_map(g));
        } else if (const auto* cb = std::get_if<CenterBiasLayout>(&layout)) {
            stack.set_time_independent_map(kf, center_bias_map(g, cb->sigma_x_deg, cb->sigma_y_deg));
        } else if (const auto* blob = std::get_if<BlobLayout>(&layout)) {
            stack.set_time_independent_map(
                kf, gaussian_blob_map(g, blob->x_px, blob->y_px, blob->sigma_deg));
        } else if (const auto* box = std::get_if<BoxLayout>(&layout)) {
            stack.set_time_independent_map(kf, box_map(g, *box));
        } else {
            const auto& mv = std::get<MovingBlobLayout>(layout);
            const double margin_x = 0.1 * g.width_px, margin_y = 0.1 * g.height_px;
            for (int t = 0; t < spec.n_frames; ++t) {
                const double cx = reflect_into(mv.x0_px + mv.vx_px * t, margin_x,
                                               g.width_px - 1 - margin_x);
                const double cy = reflect_into(mv.y0_px + mv.vy_px * t, margin_y,
                                               g.height_px - 1 - margin_y);
                stack.set_map(t, kf, gaussian_blob_map(g, cx, cy, mv.sigma_deg));
            }
        }
    }
    return stack;
}

double map_correlation(const DensityMap& a, const DensityMap& b) {
    if (a.geometry != b.geometry)
        throw Error(Errc::GeometryMismatch, "correlation inputs disagree in geometry");
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a.values[i];
        mb += b.values[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a.values[i] - ma, db = b.values[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (!(saa > 0.0) || !(sbb > 0.0)) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

std::vector<Point> sample_fixations(const FeatureStack& stack, int frame,
                                    std::span<const double> weights, int n, std::uint64_t seed) {
    if (weights.size() != static_cast<std::size_t>(stack.n_features()))
        throw std::invalid_argument("sample_fixations: one weight per feature");
    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("sample_fixations: negative weight");
        wsum += w;
    }
    if (!(wsum > 0.0)) throw std::invalid_argument("sample_fixations: zero mixture");

    // Per-feature pixel cdfs for this frame.
    const int k = stack.n_features();
    std::vector<std::vector<double>> cdfs(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        const auto& vals = stack.map(frame, j).values;
        auto& cdf = cdfs[static_cast<std::size_t>(j)];
        cdf.resize(vals.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            acc += std::max(0.0, vals[i]);
            cdf[i] = acc;
        }
    }
    std::vector<double> wcdf(static_cast<std::size_t>(k));
    double acc = 0.0;
    for (int j = 0; j < k; ++j) {
        acc += weights[static_cast<std::size_t>(j)];
        wcdf[static_cast<std::size_t>(j)] = acc;
    }

    const int width = stack.geometry().width_px;
    Rng rng(seed);
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double uw = rng.next_unit() * wcdf.back();
        const auto jt = std::upper_bound(wcdf.begin(), wcdf.end(), uw);
        const std::size_t j = std::min(static_cast<std::size_t>(jt - wcdf.begin()),
                                       static_cast<std::size_t>(k - 1));
        const auto& cdf = cdfs[j];
        const double up = rng.next_unit() * cdf.back();
        const auto pt = std::upper_bound(cdf.begin(), cdf.end(), up);
        const std::size_t pix = std::min(static_cast<std::size_t>(pt - cdf.begin()),
                                         cdf.size() - 1);
        out.push_back({static_cast<double>(pix % static_cast<std::size_t>(width)),
                       static_cast<double>(pix / static_cast<std::size_t>(width))});
    }
    return out;
}

GazeTable sample_gaze_table(const FeatureStack& stack, const SyntheticSpec& spec,
                            const std::string& video_id) {
    spec.validate();
    GazeTable table;
    table.geometry = spec.geometry;
    char obs[16];
    for (int t = 0; t < spec.n_frames; ++t) {
        const std::vector<Point> pts =
            sample_fixations(stack, t, spec.weight_schedule[static_cast<std::size_t>(t)],
                             spec.n_observers, Rng::mix(spec.seed, static_cast<std::uint64_t>(t)));
        for (int o = 0; o < spec.n_observers; ++o) {
            std::snprintf(obs, sizeof(obs), "o%02d", o + 1);
            table.records.push_back(GazeRecord{video_id, obs, t,
                                               pts[static_cast<std::size_t>(o)].x,
                                               pts[static_cast<std::size_t>(o)].y});
        }
    }
    return table;
}

SyntheticSpec standard_layout_spec(const SceneGeometry& geometry, int n_frames, int n_observers,
                                   std::uint64_t seed) {
    geometry.validate();
    const double w = geometry.width_px, h = geometry.height_px;
    Rng rng(Rng::mix(seed, 0x5a11f05eull));

    SyntheticSpec spec;
    spec.geometry = geometry;
    spec.n_frames = n_frames;
    spec.n_observers = n_observers;
    spec.seed = seed;
    spec.feature_names = {feature_names::kStatic, feature_names::kDynamic,
                          feature_names::kCenterBias, feature_names::kUniform,
                          feature_names::kFaces};

    // Quadrant placements keep the maps decorrelated: static blob top-left,
    // moving blob crossing the bottom, face box top-right, center bias at the
    // screen center.
    BlobLayout blob;
    blob.x_px = rng.next_range(0.15, 0.30) * w;
    blob.y_px = rng.next_range(0.15, 0.30) * h;
    blob.sigma_deg = rng.next_range(1.5, 2.0);

    MovingBlobLayout mover;
    mover.x0_px = rng.next_range(0.15, 0.30) * w;
    mover.y0_px = rng.next_range(0.68, 0.80) * h;
    mover.vx_px = rng.next_range(0.008, 0.016) * w;
    mover.vy_px = rng.next_range(-0.003, 0.003) * h;
    mover.sigma_deg = rng.next_range(1.2, 1.6);

    BoxLayout box;
    box.w = static_cast<int>(rng.next_range(0.14, 0.20) * w);
    box.h = static_cast<int>(rng.next_range(0.16, 0.24) * h);
    box.x = static_cast<int>(rng.next_range(0.62, 0.78) * w) - box.w / 2;
    box.y = static_cast<int>(rng.next_range(0.18, 0.30) * h) - box.h / 2;

    spec.layouts = {blob, mover, CenterBiasLayout{}, UniformLayout{}, box};
    return spec;
}

}  // namespace salfuse
