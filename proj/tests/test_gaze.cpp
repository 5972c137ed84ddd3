#include <doctest.h>

#include <cmath>
#include <sstream>

#include "salfuse/gaze.hpp"
#include "salfuse/rng.hpp"

using namespace salfuse;

namespace {
const SceneGeometry kPaper{720, 576, 28.0, 22.5, 25.0};
}

TEST_CASE("parse_gaze_csv: single row") {
    std::istringstream in("video_id,observer_id,frame_index,x_px,y_px\nv1,s1,0,360.0,288.0\n");
    const GazeParseResult r = parse_gaze_csv(in, kPaper);
    REQUIRE(r.table.records.size() == 1);
    CHECK(r.skipped_rows == 0);
    CHECK(r.table.records[0].video_id == "v1");
    CHECK(r.table.records[0].observer_id == "s1");
    CHECK(r.table.records[0].frame_index == 0);
    CHECK(r.table.records[0].x_px == 360.0);
    CHECK(r.table.records[0].y_px == 288.0);
}

TEST_CASE("parse_gaze_csv: header only") {
    std::istringstream in("video_id,observer_id,frame_index,x_px,y_px\n");
    const GazeParseResult r = parse_gaze_csv(in, kPaper);
    CHECK(r.table.records.empty());
    CHECK(r.skipped_rows == 0);
}

TEST_CASE("parse_gaze_csv: missing header") {
    std::istringstream in("v1,s1,0,1,1\n");
    CHECK_THROWS_AS(parse_gaze_csv(in, kPaper), Error);
}

TEST_CASE("parse_gaze_csv: NaN coordinate row is skipped") {
    std::istringstream in("video_id,observer_id,frame_index,x_px,y_px\nv1,s1,0,NaN,288.0\n");
    const GazeParseResult r = parse_gaze_csv(in, kPaper);
    CHECK(r.table.records.empty());
    CHECK(r.skipped_rows == 1);
}

TEST_CASE("parse_gaze_csv: malformed rows counted, CRLF accepted") {
    std::istringstream in(
        "video_id,observer_id,frame_index,x_px,y_px\r\n"
        "v1,s1,0,10,10\r\n"
        "v1,s2,0,20,oops\r\n"
        "v1,s1,0,30,30\r\n"     // duplicate observer in frame
        "v1,s3,-1,10,10\r\n"    // negative frame
        "v1,s4,1,700,500\r\n");
    const GazeParseResult r = parse_gaze_csv(in, kPaper);
    CHECK(r.table.records.size() == 2);
    CHECK(r.skipped_rows == 3);
}

TEST_CASE("gaze csv round-trips through its own writer") {
    GazeTable table;
    table.geometry = kPaper;
    table.records = {{"v1", "o01", 0, 12.5, 80.25}, {"v1", "o02", 1, 700.0, 10.0}};
    std::ostringstream out;
    write_gaze_csv(out, table);
    std::istringstream in(out.str());
    const GazeParseResult r = parse_gaze_csv(in, kPaper);
    REQUIRE(r.table.records.size() == 2);
    CHECK(r.table.records[0].x_px == 12.5);
    CHECK(r.table.records[1].frame_index == 1);
}

TEST_CASE("off-screen records are kept in the table but excluded from positions") {
    GazeTable table;
    table.geometry = kPaper;
    table.records = {{"v1", "a", 0, -5.0, 10.0}, {"v1", "b", 0, 10.0, 10.0}};
    const auto pos = table.positions("v1", 0);
    REQUIRE(pos.size() == 1);
    CHECK(pos[0].x == 10.0);
}

TEST_CASE("eye_position_density: single kernel mode") {
    const DensityMap m = eye_position_density(std::vector<Point>{{360.0, 288.0}}, kPaper);
    const std::size_t peak = argmax_index(m.values);
    CHECK(peak % 720 == 360);
    CHECK(peak / 720 == 288);
    CHECK(total_mass(m) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("eye_position_density: bimodal mass splits evenly") {
    const std::vector<Point> pts{{100.0, 100.0}, {600.0, 500.0}};
    const DensityMap m = eye_position_density(pts, kPaper, 1.0);
    const double sigma = deg_to_px(1.0, Axis::Horizontal, kPaper);
    for (const Point& c : pts) {
        double mass = 0.0;
        for (int y = 0; y < m.height(); ++y)
            for (int x = 0; x < m.width(); ++x) {
                const double dx = x - c.x, dy = y - c.y;
                if (std::sqrt(dx * dx + dy * dy) <= 3.0 * sigma) mass += m.at(x, y);
            }
        CHECK(mass == doctest::Approx(0.5).epsilon(0.02));  // |mass-0.5| < 0.01
    }
}

TEST_CASE("eye_position_density: 15 stacked positions equal one") {
    const std::vector<Point> one{{360.0, 288.0}};
    std::vector<Point> many(15, Point{360.0, 288.0});
    const DensityMap a = eye_position_density(one, kPaper);
    const DensityMap b = eye_position_density(many, kPaper);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a.values[i] - b.values[i]) < 1e-12);
}

TEST_CASE("eye_position_density: no valid positions") {
    CHECK_THROWS_AS(eye_position_density(std::vector<Point>{{-10.0, -10.0}}, kPaper), Error);
    CHECK_THROWS_AS(eye_position_density(std::vector<Point>{}, kPaper), Error);
}

TEST_CASE("eye_position_density: translation equivariance away from borders") {
    const SceneGeometry g{200, 160, 10.0, 8.0, 25.0};
    const double sigma = deg_to_px(1.0, Axis::Horizontal, g);  // 20 px
    REQUIRE(4.0 * sigma < 100.0);
    const std::vector<Point> base{{90.0, 85.0}, {95.0, 80.0}};
    const int dx = 6, dy = -4;
    std::vector<Point> shifted;
    for (const Point& p : base) shifted.push_back({p.x + dx, p.y + dy});
    const DensityMap a = eye_position_density(base, g);
    const DensityMap b = eye_position_density(shifted, g);
    const std::size_t pa = argmax_index(a.values), pb = argmax_index(b.values);
    CHECK(static_cast<int>(pb % 200) == static_cast<int>(pa % 200) + dx);
    CHECK(static_cast<int>(pb / 200) == static_cast<int>(pa / 200) + dy);
}

TEST_CASE("eye_position_density: duplicates change mass, not support") {
    const SceneGeometry g{64, 64, 8.0, 8.0, 25.0};
    const std::vector<Point> base{{20.0, 20.0}, {44.0, 44.0}};
    const std::vector<Point> dup{{20.0, 20.0}, {44.0, 44.0}, {44.0, 44.0}};
    const DensityMap a = eye_position_density(base, g);
    const DensityMap b = eye_position_density(dup, g);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK((a.values[i] > 0.0) == (b.values[i] > 0.0));
}
