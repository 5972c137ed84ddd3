#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "salfuse/grid.hpp"

namespace salfuse {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline bool on_screen(const Point& p, const SceneGeometry& g) {
    return p.x >= 0.0 && p.x < g.width_px && p.y >= 0.0 && p.y < g.height_px;
}

// One recorded eye position. Off-screen coordinates are kept in the table but
// excluded from density maps.
struct GazeRecord {
    std::string video_id;
    std::string observer_id;
    int frame_index = 0;
    double x_px = 0.0;
    double y_px = 0.0;
};

struct GazeTable {
    std::vector<GazeRecord> records;
    SceneGeometry geometry;

    // On-screen positions of one frame, in record order.
    std::vector<Point> positions(const std::string& video_id, int frame_index) const;
    std::vector<std::string> video_ids() const;
    int max_frame(const std::string& video_id) const;  // -1 when the video is absent
};

struct GazeParseResult {
    GazeTable table;
    std::size_t skipped_rows = 0;
};

// Expects the header `video_id,observer_id,frame_index,x_px,y_px`. Malformed
// rows (wrong field count, non-finite coordinates, negative frame, duplicate
// observer within a frame) are skipped and counted, not fatal.
GazeParseResult parse_gaze_csv(std::istream& in, const SceneGeometry& geometry);

void write_gaze_csv(std::ostream& out, const GazeTable& table);

// Sum of isotropic Gaussian kernels (std kernel_sigma_deg of visual angle,
// horizontal conversion) centered at each on-screen position, truncated at
// 4 sigma, renormalized to a pdf. Throws Error(NoValidPositions) when every
// position is off-screen.
DensityMap eye_position_density(std::span<const Point> positions, const SceneGeometry& geometry,
                                double kernel_sigma_deg = 1.0);

}  // namespace salfuse
