#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "salfuse/grid.hpp"

namespace salfuse {

// Canonical feature names used by the fusion schemes and the CLI config.
namespace feature_names {
inline constexpr const char* kStatic = "static";
inline constexpr const char* kDynamic = "dynamic";
inline constexpr const char* kCenterBias = "center_bias";
inline constexpr const char* kUniform = "uniform";
inline constexpr const char* kFaces = "faces";
}  // namespace feature_names

// A density map plus the degenerate-input marker set when the builder fell
// back to the uniform map (empty mask, flat luma, static window).
struct FlaggedMap {
    DensityMap map;
    MapFlag flag = MapFlag::None;
};

struct GaborBankSpec {
    int n_orientations = 4;
    int n_scales = 2;
    std::vector<double> wavelengths_px = {4.0, 8.0};
    double bandwidth_octaves = 1.0;

    void validate() const;
};

// Per-frame feature maps for one video. Maps are kept in a shared pool so a
// time-independent map (center bias, uniform) is stored once and referenced
// by every frame.
class FeatureStack {
public:
    FeatureStack() = default;
    FeatureStack(SceneGeometry geometry, std::vector<std::string> names, int n_frames);

    const SceneGeometry& geometry() const { return geometry_; }
    const std::vector<std::string>& names() const { return names_; }
    int n_frames() const { return n_frames_; }
    int n_features() const { return static_cast<int>(names_.size()); }
    int feature_index(const std::string& name) const;  // -1 when absent

    const DensityMap& map(int frame, int feature) const;
    const DensityMap& map(int frame, const std::string& name) const;
    std::vector<const DensityMap*> frame_slice(int frame) const;

    void set_map(int frame, int feature, DensityMap map);
    // Assigns one map to every frame of a feature without copying it.
    void set_time_independent_map(int feature, DensityMap map);

    bool complete() const;  // every (frame, feature) slot assigned

private:
    std::size_t slot(int frame, int feature) const;

    SceneGeometry geometry_;
    std::vector<std::string> names_;
    int n_frames_ = 0;
    std::vector<DensityMap> pool_;
    std::vector<std::int32_t> slot_to_pool_;  // -1 = unassigned
};

// Anisotropic Gaussian centered on the screen, sigmas in degrees of visual
// angle per axis, normalized to a pdf.
DensityMap center_bias_map(const SceneGeometry& geometry, double sigma_x_deg = 2.3,
                           double sigma_y_deg = 1.9);

// Every pixel = 1 / (W*H).
DensityMap uniform_map(const SceneGeometry& geometry);

// Normalizes a non-negative mask (optionally Gaussian-blurred) to a pdf.
// An all-zero mask falls back to the uniform map with MapFlag::EmptyMask.
FlaggedMap face_map(const Raster& mask, const SceneGeometry& geometry, double blur_sigma_deg = 0.0);

// Luminance contrast through a bank of Gabor filters: rectified responses,
// each strengthened as response^2 / max(response), summed over the bank and
// normalized. Constant luma falls back to uniform with MapFlag::FlatInput.
FlaggedMap static_saliency(const Raster& luma, const SceneGeometry& geometry,
                           const GaborBankSpec& spec = {});

// Motion amplitude from absolute luminance differences over a 5-frame window
// with a per-pixel temporal median to drop one-frame events. A window with no
// persistent change falls back to uniform with MapFlag::StaticWindow.
FlaggedMap dynamic_saliency(std::span<const Raster> frames, const SceneGeometry& geometry);

}  // namespace salfuse
