#pragma once

#include <stdexcept>
#include <string>

namespace salfuse {

// Error conditions raised by the library. Input/data conditions, not bugs;
// the CLI maps them to exit code 2.
enum class Errc {
    AllZeroMap,
    MissingHeader,
    NoValidPositions,
    NoValidFixations,
    BadMagic,
    DimensionMismatch,
    TruncatedStream,
    RankDeficient,
    ZeroResidual,
    DegeneratePosition,
    NoGazeData,
    EmptyCategory,
    GeometryMismatch,
    BadInput,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

// Degenerate-input markers for feature maps that fell back to the uniform map.
enum class MapFlag {
    None,
    EmptyMask,
    FlatInput,
    StaticWindow,
};

const char* map_flag_name(MapFlag f);

}  // namespace salfuse
