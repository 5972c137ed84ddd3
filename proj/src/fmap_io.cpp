#include "salfuse/fmap_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

namespace salfuse {

namespace {

constexpr char kMagic[4] = {'F', 'M', 'A', 'P'};
constexpr std::uint16_t kVersion = 1;

void put_u16(std::ostream& out, std::uint16_t v) {
    const char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
    out.write(b, 2);
}

void put_u32(std::ostream& out, std::uint32_t v) {
    const char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                       static_cast<char>((v >> 16) & 0xff), static_cast<char>(v >> 24)};
    out.write(b, 4);
}

void put_f32(std::ostream& out, float v) {
    put_u32(out, std::bit_cast<std::uint32_t>(v));
}

bool get_bytes(std::istream& in, char* dst, std::size_t n) {
    in.read(dst, static_cast<std::streamsize>(n));
    return static_cast<std::size_t>(in.gcount()) == n;
}

std::uint16_t get_u16(std::istream& in) {
    unsigned char b[2];
    if (!get_bytes(in, reinterpret_cast<char*>(b), 2))
        throw Error(Errc::TruncatedStream, "unexpected end of FMAP stream");
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    if (!get_bytes(in, reinterpret_cast<char*>(b), 4))
        throw Error(Errc::TruncatedStream, "unexpected end of FMAP stream");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void store_fmap(const FeatureStack& stack, std::ostream& sink) {
    if (!stack.complete())
        throw Error(Errc::DimensionMismatch, "feature stack has unassigned maps");
    const auto& g = stack.geometry();
    sink.write(kMagic, 4);
    put_u16(sink, kVersion);
    put_u32(sink, static_cast<std::uint32_t>(g.width_px));
    put_u32(sink, static_cast<std::uint32_t>(g.height_px));
    put_u32(sink, static_cast<std::uint32_t>(stack.n_frames()));
    put_u16(sink, static_cast<std::uint16_t>(stack.n_features()));
    for (const std::string& name : stack.names()) {
        if (name.size() > std::numeric_limits<std::uint16_t>::max())
            throw Error(Errc::BadInput, "feature name too long");
        put_u16(sink, static_cast<std::uint16_t>(name.size()));
        sink.write(name.data(), static_cast<std::streamsize>(name.size()));
    }
    for (int frame = 0; frame < stack.n_frames(); ++frame)
        for (int k = 0; k < stack.n_features(); ++k)
            for (double v : stack.map(frame, k).values) put_f32(sink, static_cast<float>(v));
    if (!sink)
        throw Error(Errc::TruncatedStream, "write to FMAP sink failed");
}

FeatureStack load_fmap(std::istream& source, const SceneGeometry& geometry) {
    geometry.validate();
    char magic[4];
    if (!get_bytes(source, magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
        throw Error(Errc::BadMagic, "not an FMAP stream");
    const std::uint16_t version = get_u16(source);
    if (version != kVersion)
        throw Error(Errc::BadMagic, "unsupported FMAP version " + std::to_string(version));
    const std::uint32_t width = get_u32(source);
    const std::uint32_t height = get_u32(source);
    const std::uint32_t n_frames = get_u32(source);
    const std::uint16_t n_features = get_u16(source);
    if (width == 0 || height == 0 || n_frames == 0 || n_features == 0)
        throw Error(Errc::DimensionMismatch, "FMAP header declares an empty stack");
    if (static_cast<int>(width) != geometry.width_px || static_cast<int>(height) != geometry.height_px)
        throw Error(Errc::DimensionMismatch, "FMAP pixel dimensions do not match geometry");

    std::vector<std::string> names;
    names.reserve(n_features);
    for (std::uint16_t k = 0; k < n_features; ++k) {
        const std::uint16_t len = get_u16(source);
        std::string name(len, '\0');
        if (len > 0 && !get_bytes(source, name.data(), len))
            throw Error(Errc::TruncatedStream, "unexpected end of FMAP name table");
        names.push_back(std::move(name));
    }

    FeatureStack stack(geometry, std::move(names), static_cast<int>(n_frames));
    const std::size_t n_px = static_cast<std::size_t>(width) * height;
    std::vector<char> buf(n_px * 4);
    for (std::uint32_t frame = 0; frame < n_frames; ++frame) {
        for (std::uint16_t k = 0; k < n_features; ++k) {
            if (!get_bytes(source, buf.data(), buf.size()))
                throw Error(Errc::TruncatedStream, "FMAP body shorter than header declares");
            std::vector<double> values(n_px);
            for (std::size_t i = 0; i < n_px; ++i) {
                std::uint32_t bits = static_cast<std::uint8_t>(buf[4 * i]) |
                                     (static_cast<std::uint32_t>(static_cast<std::uint8_t>(buf[4 * i + 1])) << 8) |
                                     (static_cast<std::uint32_t>(static_cast<std::uint8_t>(buf[4 * i + 2])) << 16) |
                                     (static_cast<std::uint32_t>(static_cast<std::uint8_t>(buf[4 * i + 3])) << 24);
                values[i] = static_cast<double>(std::bit_cast<float>(bits));
            }
            stack.set_map(static_cast<int>(frame), k, DensityMap{geometry, std::move(values)});
        }
    }
    return stack;
}

void store_fmap_file(const FeatureStack& stack, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::BadInput, "cannot open for writing: " + path);
    store_fmap(stack, out);
}

FeatureStack load_fmap_file(const std::string& path, const SceneGeometry& geometry) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::BadInput, "cannot open for reading: " + path);
    return load_fmap(in, geometry);
}

}  // namespace salfuse
