#pragma once

#include <stdexcept>

namespace salfuse {

enum class Axis { Horizontal, Vertical };

// Pixel dimensions, visual angle span and frame rate of the displayed scene.
// Governs every degree <-> pixel conversion in the library.
struct SceneGeometry {
    int width_px = 0;
    int height_px = 0;
    double width_deg = 0.0;
    double height_deg = 0.0;
    double fps = 25.0;

    double px_per_deg_x() const { return width_px / width_deg; }
    double px_per_deg_y() const { return height_px / height_deg; }

    void validate() const {
        if (width_px < 1 || height_px < 1)
            throw std::invalid_argument("SceneGeometry: pixel dimensions must be >= 1");
        if (!(width_deg > 0.0) || !(height_deg > 0.0) || !(fps > 0.0))
            throw std::invalid_argument("SceneGeometry: degree span and fps must be > 0");
    }

    bool operator==(const SceneGeometry&) const = default;
};

inline double deg_to_px(double value_deg, Axis axis, const SceneGeometry& g) {
    return value_deg * (axis == Axis::Horizontal ? g.px_per_deg_x() : g.px_per_deg_y());
}

// Geometry of the same scene sampled on a coarser grid; degree span is unchanged.
inline SceneGeometry downsampled(const SceneGeometry& g, int factor) {
    if (factor < 1 || g.width_px % factor != 0 || g.height_px % factor != 0)
        throw std::invalid_argument("downsample factor must divide both pixel dimensions");
    SceneGeometry out = g;
    out.width_px /= factor;
    out.height_px /= factor;
    return out;
}

}  // namespace salfuse
