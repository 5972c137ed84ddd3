#include <doctest.h>

#include <cmath>
#include <map>

#include "salfuse/estimators.hpp"
#include "salfuse/metrics.hpp"
#include "salfuse/rng.hpp"
#include "salfuse/synth.hpp"

using namespace salfuse;

namespace {
const SceneGeometry kScene{128, 96, 28.0, 21.0, 25.0};
}

TEST_CASE("make_synthetic_stack: opposite-corner blobs decorrelate") {
    SyntheticSpec spec;
    spec.geometry = kScene;
    spec.n_frames = 1;
    spec.feature_names = {"b1", "b2"};
    spec.layouts = {BlobLayout{20.0, 16.0, 1.5}, BlobLayout{108.0, 80.0, 1.5}};
    spec.weight_schedule = {{0.5, 0.5}};
    const FeatureStack stack = make_synthetic_stack(spec);
    CHECK(std::abs(map_correlation(stack.map(0, 0), stack.map(0, 1))) < 0.05);
}

TEST_CASE("make_synthetic_stack: uniform layout matches uniform_map exactly") {
    SyntheticSpec spec;
    spec.geometry = kScene;
    spec.n_frames = 2;
    spec.feature_names = {"uniform", "blob"};
    spec.layouts = {UniformLayout{}, BlobLayout{64.0, 48.0, 2.0}};
    spec.weight_schedule = {{0.5, 0.5}, {0.5, 0.5}};
    const FeatureStack stack = make_synthetic_stack(spec);
    const DensityMap expect = uniform_map(kScene);
    for (std::size_t i = 0; i < expect.size(); ++i)
        CHECK(stack.map(1, 0).values[i] == expect.values[i]);
}

TEST_CASE("make_synthetic_stack: deterministic given the spec") {
    const SyntheticSpec spec = [] {
        SyntheticSpec s = standard_layout_spec(kScene, 4, 15, 99);
        for (int t = 0; t < 4; ++t) s.weight_schedule.push_back({0.2, 0.2, 0.2, 0.2, 0.2});
        return s;
    }();
    const FeatureStack a = make_synthetic_stack(spec);
    const FeatureStack b = make_synthetic_stack(spec);
    for (int t = 0; t < 4; ++t)
        for (int k = 0; k < a.n_features(); ++k)
            for (std::size_t i = 0; i < a.map(t, k).size(); ++i)
                CHECK(a.map(t, k).values[i] == b.map(t, k).values[i]);
}

TEST_CASE("sample_fixations: degenerate mixture stays in the support") {
    SyntheticSpec spec;
    spec.geometry = kScene;
    spec.n_frames = 1;
    spec.feature_names = {"box", "blob"};
    spec.layouts = {BoxLayout{20, 20, 24, 24, 0.0}, BlobLayout{100.0, 60.0, 1.5}};
    spec.weight_schedule = {{1.0, 0.0}};
    const FeatureStack stack = make_synthetic_stack(spec);
    const auto pts = sample_fixations(stack, 0, spec.weight_schedule[0], 500, 7);
    for (const Point& p : pts) {
        CHECK(p.x >= 20.0);
        CHECK(p.x < 44.0);
        CHECK(p.y >= 20.0);
        CHECK(p.y < 44.0);
    }
}

TEST_CASE("sample_fixations: mixture fractions concentrate") {
    SyntheticSpec spec;
    spec.geometry = kScene;
    spec.n_frames = 1;
    spec.feature_names = {"b1", "b2"};
    spec.layouts = {BlobLayout{24.0, 20.0, 1.2}, BlobLayout{104.0, 76.0, 1.2}};
    spec.weight_schedule = {{0.6, 0.4}};
    const FeatureStack stack = make_synthetic_stack(spec);
    const auto pts = sample_fixations(stack, 0, spec.weight_schedule[0], 10000, 12345);
    const double sigma_px = deg_to_px(1.2, Axis::Horizontal, kScene);
    int near_first = 0;
    for (const Point& p : pts) {
        const double dx = p.x - 24.0, dy = p.y - 20.0;
        if (std::sqrt(dx * dx + dy * dy) <= 3.0 * sigma_px) ++near_first;
    }
    CHECK(std::abs(near_first / 10000.0 - 0.6) <= 0.02);
}

TEST_CASE("sample_fixations: empirical histogram approaches the mixture (KLD)") {
    const SceneGeometry small{32, 24, 16.0, 12.0, 25.0};
    SyntheticSpec spec;
    spec.geometry = small;
    spec.n_frames = 1;
    spec.feature_names = {"b1", "uniform"};
    spec.layouts = {BlobLayout{10.0, 10.0, 2.0}, UniformLayout{}};
    spec.weight_schedule = {{0.7, 0.3}};
    const FeatureStack stack = make_synthetic_stack(spec);
    const int n = 1000000;
    const auto pts = sample_fixations(stack, 0, spec.weight_schedule[0], n, 2222);
    std::vector<double> hist(32 * 24, 0.0);
    for (const Point& p : pts)
        hist[static_cast<std::size_t>(p.y) * 32 + static_cast<std::size_t>(p.x)] += 1.0;
    const DensityMap emp = normalize_to_pdf(hist, small);
    std::vector<double> mix(32 * 24);
    for (std::size_t i = 0; i < mix.size(); ++i)
        mix[i] = 0.7 * stack.map(0, 0).values[i] + 0.3 * stack.map(0, 1).values[i];
    const DensityMap truth = normalize_to_pdf(mix, small);
    CHECK(kld(emp, truth) < 0.01);
}

TEST_CASE("sample_fixations: identical seeds give identical draws") {
    const SyntheticSpec spec = [] {
        SyntheticSpec s = standard_layout_spec(kScene, 1, 15, 5);
        s.weight_schedule.push_back({0.2, 0.2, 0.2, 0.2, 0.2});
        return s;
    }();
    const FeatureStack stack = make_synthetic_stack(spec);
    const auto a = sample_fixations(stack, 0, spec.weight_schedule[0], 100, 31337);
    const auto b = sample_fixations(stack, 0, spec.weight_schedule[0], 100, 31337);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].y == b[i].y);
    }
}

TEST_CASE("round-trip: lasso recovers the dominant feature in >= 90% of frames") {
    // 100 seeded frames of 15 fixations each, face-dominant truth
    int hits = 0;
    FitOptions options;
    options.downsample = 2;
    for (int trial = 0; trial < 100; ++trial) {
        SyntheticSpec spec = standard_layout_spec(kScene, 1, 15, 9000 + static_cast<std::uint64_t>(trial));
        spec.weight_schedule = {{0.05, 0.1, 0.15, 0.0, 0.7}};
        const FeatureStack stack = make_synthetic_stack(spec);
        GazeTable gaze;
        gaze.geometry = kScene;
        const auto pts = sample_fixations(stack, 0, spec.weight_schedule[0], 15,
                                          Rng::mix(7777, static_cast<std::uint64_t>(trial)));
        for (std::size_t i = 0; i < pts.size(); ++i)
            gaze.records.push_back(GazeRecord{"v", "o" + std::to_string(i), 0, pts[i].x, pts[i].y});
        const FrameFit fit = fit_frame(0, gaze, "v", stack, FitMethod::LassoBic, options);
        const std::size_t truth_argmax = 4;  // faces
        std::size_t got = 0;
        for (std::size_t j = 1; j < fit.weights.size(); ++j)
            if (fit.weights.beta_norm[j] > fit.weights.beta_norm[got]) got = j;
        if (got == truth_argmax) ++hits;
    }
    CHECK(hits >= 90);
}
