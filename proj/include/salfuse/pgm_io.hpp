#pragma once

#include <iosfwd>
#include <string>

#include "salfuse/grid.hpp"

namespace salfuse {

// Binary PGM (P5), 8-bit only. Values come back as doubles in [0, 255].
Raster read_pgm(std::istream& in);
Raster read_pgm_file(const std::string& path);

void write_pgm(std::ostream& out, const Raster& raster);  // values clamped to [0, 255]
void write_pgm_file(const std::string& path, const Raster& raster);

}  // namespace salfuse
