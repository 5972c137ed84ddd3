#pragma once

#include <iosfwd>
#include <string>

#include "salfuse/features.hpp"

namespace salfuse {

// FMAP container: magic "FMAP", u16 version (=1), u32 width, u32 height,
// u32 n_frames, u16 n_features, feature-name table (u16 byte length + UTF-8
// bytes each), then frames in order (frame-major, feature-minor), each a
// row-major array of little-endian 32-bit floats. All integers little-endian.
void store_fmap(const FeatureStack& stack, std::ostream& sink);

// The container carries pixel dimensions only; the caller supplies the scene
// geometry and the pixel dimensions must agree. Values are kept exactly as
// stored (no renormalization) so a store/load/store cycle is byte-identical.
FeatureStack load_fmap(std::istream& source, const SceneGeometry& geometry);

void store_fmap_file(const FeatureStack& stack, const std::string& path);
FeatureStack load_fmap_file(const std::string& path, const SceneGeometry& geometry);

}  // namespace salfuse
