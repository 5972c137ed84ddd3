#include <doctest.h>

#include <cmath>

#include "salfuse/features.hpp"
#include "salfuse/rng.hpp"

using namespace salfuse;

namespace {
const SceneGeometry kPaper{720, 576, 28.0, 22.5, 25.0};
const SceneGeometry kDesk{64, 64, 14.0, 14.0, 25.0};
}  // namespace

TEST_CASE("center_bias_map: mode at the screen center") {
    const DensityMap m = center_bias_map(kPaper);
    const std::size_t peak = argmax_index(m.values);
    const double px = static_cast<double>(peak % 720), py = static_cast<double>(peak / 720);
    CHECK(std::abs(px - 359.5) <= 0.5);
    CHECK(std::abs(py - 287.5) <= 0.5);
    CHECK(total_mass(m) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("center_bias_map: one-sigma falloff along x") {
    const DensityMap m = center_bias_map(kPaper, 2.3, 1.9);
    // 2.3 deg = 59.14 px from the center; nearest pixel column is 419
    const double ratio = m.at(360, 288) / m.at(419, 288);
    CHECK(ratio == doctest::Approx(std::exp(0.5)).epsilon(0.01));
}

TEST_CASE("center_bias_map: isotropic sigmas give reflection symmetry") {
    const SceneGeometry g{40, 40, 10.0, 10.0, 25.0};
    const DensityMap m = center_bias_map(g, 2.0, 2.0);
    for (int y = 0; y < 40; ++y)
        for (int x = 0; x < 40; ++x) {
            CHECK(std::abs(m.at(x, y) - m.at(39 - x, y)) < 1e-12);
            CHECK(std::abs(m.at(x, y) - m.at(x, 39 - y)) < 1e-12);
        }
}

TEST_CASE("uniform_map: paper geometry value") {
    const DensityMap m = uniform_map(kPaper);
    for (int i = 0; i < 5; ++i)
        CHECK(std::abs(m.values[static_cast<std::size_t>(i) * 9973 % m.size()] -
                       1.0 / (720.0 * 576.0)) < 1e-12);
    CHECK(m.values[0] == doctest::Approx(2.4113e-6).epsilon(1e-4));
    CHECK(total_mass(m) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("uniform_map: 2x2") {
    const DensityMap m = uniform_map(SceneGeometry{2, 2, 2.0, 2.0, 25.0});
    for (double v : m.values) CHECK(v == 0.25);
}

TEST_CASE("face_map: full-frame mask is uniform") {
    Raster mask = make_raster(64, 64, 1.0);
    const FlaggedMap fm = face_map(mask, kDesk);
    CHECK(fm.flag == MapFlag::None);
    for (double v : fm.map.values) CHECK(v == doctest::Approx(1.0 / 4096.0).epsilon(1e-12));
}

TEST_CASE("face_map: block mask is proportional") {
    Raster mask = make_raster(64, 64, 0.0);
    for (int y = 10; y < 20; ++y)
        for (int x = 30; x < 40; ++x) mask.at(x, y) = 1.0;
    const FlaggedMap fm = face_map(mask, kDesk);
    CHECK(fm.flag == MapFlag::None);
    CHECK(fm.map.at(35, 15) == doctest::Approx(0.01));
    CHECK(fm.map.at(0, 0) == 0.0);
}

TEST_CASE("face_map: empty mask falls back to uniform with a flag") {
    Raster mask = make_raster(64, 64, 0.0);
    const FlaggedMap fm = face_map(mask, kDesk);
    CHECK(fm.flag == MapFlag::EmptyMask);
    for (double v : fm.map.values) CHECK(v == doctest::Approx(1.0 / 4096.0));
}

TEST_CASE("face_map: blur keeps the set pixels in the support") {
    Raster mask = make_raster(64, 64, 0.0);
    mask.at(32, 32) = 1.0;
    const FlaggedMap fm = face_map(mask, kDesk, 0.5);
    CHECK(fm.flag == MapFlag::None);
    CHECK(fm.map.at(32, 32) > 0.0);
    CHECK(argmax_index(fm.map.values) == 32u * 64u + 32u);
}

TEST_CASE("static_saliency: constant luma flags FlatInput") {
    const FlaggedMap fm = static_saliency(make_raster(64, 64, 128.0), kDesk);
    CHECK(fm.flag == MapFlag::FlatInput);
    for (double v : fm.map.values) CHECK(v == doctest::Approx(1.0 / 4096.0));
}

TEST_CASE("static_saliency: vertical edge attracts the maximum") {
    Raster luma = make_raster(64, 64, 0.0);
    for (int y = 0; y < 64; ++y)
        for (int x = 32; x < 64; ++x) luma.at(x, y) = 255.0;
    const FlaggedMap fm = static_saliency(luma, kDesk);
    CHECK(fm.flag == MapFlag::None);
    const int peak_x = static_cast<int>(argmax_index(fm.map.values) % 64);
    CHECK(peak_x >= 29);
    CHECK(peak_x <= 34);
}

TEST_CASE("static_saliency: doubling patch contrast raises its mass") {
    Raster luma = make_raster(64, 64, 128.0);
    auto checker = [&](int x0, int y0, double amplitude) {
        for (int y = y0; y < y0 + 10; ++y)
            for (int x = x0; x < x0 + 10; ++x)
                luma.at(x, y) = 128.0 + (((x + y) % 2 == 0) ? amplitude : -amplitude);
    };
    checker(10, 10, 60.0);
    checker(44, 44, 30.0);
    const FlaggedMap fm = static_saliency(luma, kDesk);
    REQUIRE(fm.flag == MapFlag::None);
    double strong = 0.0, weak = 0.0;
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x) {
            if (x >= 5 && x < 25 && y >= 5 && y < 25) strong += fm.map.at(x, y);
            if (x >= 39 && x < 59 && y >= 39 && y < 59) weak += fm.map.at(x, y);
        }
    CHECK(strong / weak > 1.0);
}

TEST_CASE("static_saliency: invariant to affine luminance change") {
    Rng rng(99);
    Raster luma = make_raster(64, 64);
    for (double& v : luma.values) v = rng.next_range(0.0, 255.0);
    const FlaggedMap a = static_saliency(luma, kDesk);
    Raster scaled = luma;
    for (double& v : scaled.values) v = 2.5 * v + 12.0;
    const FlaggedMap b = static_saliency(scaled, kDesk);
    REQUIRE(a.flag == MapFlag::None);
    REQUIRE(b.flag == MapFlag::None);
    double peak = 0.0;
    for (double v : a.map.values) peak = std::max(peak, v);
    for (std::size_t i = 0; i < a.map.size(); ++i)
        CHECK(std::abs(a.map.values[i] - b.map.values[i]) <= 1e-6 * peak);
}

namespace {
const SceneGeometry kSeq{32, 32, 8.0, 8.0, 25.0};

std::vector<Raster> five_frames(double base = 0.0) {
    return std::vector<Raster>(5, make_raster(32, 32, base));
}
}  // namespace

TEST_CASE("dynamic_saliency: identical frames flag StaticWindow") {
    const std::vector<Raster> frames = five_frames(17.0);
    const FlaggedMap fm = dynamic_saliency(frames, kSeq);
    CHECK(fm.flag == MapFlag::StaticWindow);
    for (double v : fm.map.values) CHECK(v == doctest::Approx(1.0 / 1024.0));
}

TEST_CASE("dynamic_saliency: translating block dominates") {
    // textured block so interior pixels change as it moves (a flat block only
    // changes at its edges, which the 5-map median correctly discards)
    std::vector<Raster> frames = five_frames();
    for (int t = 0; t < 5; ++t)
        for (int y = 12; y < 20; ++y)
            for (int x = 4 + 2 * t; x < 12 + 2 * t; ++x)
                frames[static_cast<std::size_t>(t)].at(x, y) =
                    ((x - 2 * t) % 4 < 2) ? 200.0 : 100.0;
    const FlaggedMap fm = dynamic_saliency(frames, kSeq);
    REQUIRE(fm.flag == MapFlag::None);
    const std::size_t peak = argmax_index(fm.map.values);
    const int px = static_cast<int>(peak % 32), py = static_cast<int>(peak / 32);
    CHECK(px >= 2);
    CHECK(px <= 22);  // trajectory band
    CHECK(py >= 11);
    CHECK(py <= 20);
}

TEST_CASE("dynamic_saliency: one-frame flash is suppressed by the median") {
    std::vector<Raster> frames = five_frames();
    // persistent mover: toggles every frame so each adjacent pair differs
    for (int t = 0; t < 5; ++t)
        if (t % 2 == 1)
            for (int y = 4; y < 8; ++y)
                for (int x = 4; x < 8; ++x) frames[static_cast<std::size_t>(t)].at(x, y) = 100.0;
    // flash: appears only in the middle frame
    for (int y = 24; y < 28; ++y)
        for (int x = 24; x < 28; ++x) frames[2].at(x, y) = 100.0;

    const FlaggedMap fm = dynamic_saliency(frames, kSeq);
    REQUIRE(fm.flag == MapFlag::None);
    double mover = 0.0, flash = 0.0;
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 32; ++x) {
            if (x >= 2 && x < 10 && y >= 2 && y < 10) mover += fm.map.at(x, y);
            if (x >= 22 && x < 30 && y >= 22 && y < 30) flash += fm.map.at(x, y);
        }
    CHECK(mover > 0.0);
    CHECK(flash < 0.1 * mover);
}

TEST_CASE("dynamic_saliency: zero mass where no adjacent pair differs") {
    std::vector<Raster> frames = five_frames();
    for (int t = 0; t < 5; ++t) frames[static_cast<std::size_t>(t)].at(10 + t, 10) = 50.0;
    const FlaggedMap fm = dynamic_saliency(frames, kSeq);
    REQUIRE(fm.flag == MapFlag::None);
    // collect pixels touched by any adjacent difference
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 32; ++x) {
            bool changed = false;
            for (int t = 1; t < 5; ++t)
                if (frames[static_cast<std::size_t>(t)].at(x, y) !=
                    frames[static_cast<std::size_t>(t - 1)].at(x, y))
                    changed = true;
            if (!changed) CHECK(fm.map.at(x, y) == 0.0);
        }
}

TEST_CASE("dynamic_saliency: requires exactly five frames") {
    std::vector<Raster> frames(4, make_raster(32, 32));
    CHECK_THROWS_AS(dynamic_saliency(frames, kSeq), std::invalid_argument);
}

TEST_CASE("FeatureStack: time-independent maps replicate across frames") {
    FeatureStack stack(kSeq, {"center_bias", "uniform"}, 3);
    stack.set_time_independent_map(0, center_bias_map(kSeq));
    stack.set_time_independent_map(1, uniform_map(kSeq));
    CHECK(stack.complete());
    CHECK(&stack.map(0, 0) == &stack.map(2, 0));  // shared storage, not copies
    CHECK(stack.map(0, "uniform").values[0] == doctest::Approx(1.0 / 1024.0));
    CHECK(stack.feature_index("center_bias") == 0);
    CHECK(stack.feature_index("missing") == -1);
}
