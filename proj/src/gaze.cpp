#include "salfuse/gaze.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <set>
#include <tuple>

namespace salfuse {

namespace {

constexpr const char* kGazeHeader = "video_id,observer_id,frame_index,x_px,y_px";

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(out);
}

bool parse_int(const std::string& s, int& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size()) return false;
    out = static_cast<int>(v);
    return static_cast<long>(out) == v;
}

}  // namespace

std::vector<Point> GazeTable::positions(const std::string& video_id, int frame_index) const {
    std::vector<Point> out;
    for (const auto& r : records) {
        if (r.frame_index != frame_index || r.video_id != video_id) continue;
        Point p{r.x_px, r.y_px};
        if (on_screen(p, geometry)) out.push_back(p);
    }
    return out;
}

std::vector<std::string> GazeTable::video_ids() const {
    std::vector<std::string> out;
    for (const auto& r : records)
        if (std::find(out.begin(), out.end(), r.video_id) == out.end()) out.push_back(r.video_id);
    return out;
}

int GazeTable::max_frame(const std::string& video_id) const {
    int best = -1;
    for (const auto& r : records)
        if (r.video_id == video_id) best = std::max(best, r.frame_index);
    return best;
}

GazeParseResult parse_gaze_csv(std::istream& in, const SceneGeometry& geometry) {
    geometry.validate();
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != kGazeHeader)
        throw Error(Errc::MissingHeader, std::string("expected header `") + kGazeHeader + "`");

    GazeParseResult result;
    result.table.geometry = geometry;
    std::set<std::tuple<std::string, std::string, int>> seen;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        GazeRecord rec;
        double x = 0.0, y = 0.0;
        int frame = 0;
        const bool ok = fields.size() == 5 && !fields[0].empty() && !fields[1].empty() &&
                        parse_int(fields[2], frame) && frame >= 0 &&
                        parse_double(fields[3], x) && parse_double(fields[4], y);
        if (!ok) {
            ++result.skipped_rows;
            continue;
        }
        // At most one record per observer per (video, frame); first one wins.
        if (!seen.insert({fields[0], fields[1], frame}).second) {
            ++result.skipped_rows;
            continue;
        }
        rec.video_id = fields[0];
        rec.observer_id = fields[1];
        rec.frame_index = frame;
        rec.x_px = x;
        rec.y_px = y;
        result.table.records.push_back(std::move(rec));
    }
    return result;
}

void write_gaze_csv(std::ostream& out, const GazeTable& table) {
    out << kGazeHeader << '\n';
    char buf[128];
    for (const auto& r : table.records) {
        std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g", r.frame_index, r.x_px, r.y_px);
        out << r.video_id << ',' << r.observer_id << ',' << buf << '\n';
    }
}

DensityMap eye_position_density(std::span<const Point> positions, const SceneGeometry& geometry,
                                double kernel_sigma_deg) {
    geometry.validate();
    if (!(kernel_sigma_deg > 0.0))
        throw std::invalid_argument("eye_position_density: kernel sigma must be > 0");
    const double sigma_px = deg_to_px(kernel_sigma_deg, Axis::Horizontal, geometry);
    const double radius = 4.0 * sigma_px;
    const double inv_two_var = 1.0 / (2.0 * sigma_px * sigma_px);

    std::vector<double> grid(static_cast<std::size_t>(geometry.width_px) * geometry.height_px, 0.0);
    std::size_t used = 0;
    for (const Point& p : positions) {
        if (!on_screen(p, geometry)) continue;
        ++used;
        const int x0 = std::max(0, static_cast<int>(std::ceil(p.x - radius)));
        const int x1 = std::min(geometry.width_px - 1, static_cast<int>(std::floor(p.x + radius)));
        const int y0 = std::max(0, static_cast<int>(std::ceil(p.y - radius)));
        const int y1 = std::min(geometry.height_px - 1, static_cast<int>(std::floor(p.y + radius)));
        for (int y = y0; y <= y1; ++y) {
            const double dy = y - p.y;
            double* row = grid.data() + static_cast<std::size_t>(y) * geometry.width_px;
            for (int x = x0; x <= x1; ++x) {
                const double dx = x - p.x;
                row[x] += std::exp(-(dx * dx + dy * dy) * inv_two_var);
            }
        }
    }
    if (used == 0)
        throw Error(Errc::NoValidPositions, "all positions are off-screen");
    return normalize_to_pdf(std::move(grid), geometry);
}

}  // namespace salfuse
