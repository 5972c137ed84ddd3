#include "salfuse/pgm_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace salfuse {

namespace {

// Skips whitespace and `#` comment lines between header tokens.
int next_header_int(std::istream& in) {
    while (true) {
        const int c = in.peek();
        if (c == EOF) throw Error(Errc::TruncatedStream, "PGM header ended early");
        if (c == '#') {
            std::string line;
            std::getline(in, line);
            continue;
        }
        if (std::isspace(c)) {
            in.get();
            continue;
        }
        break;
    }
    int value = 0;
    if (!(in >> value)) throw Error(Errc::BadInput, "PGM header: expected integer");
    return value;
}

}  // namespace

Raster read_pgm(std::istream& in) {
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (!in || m0 != 'P' || m1 != '5')
        throw Error(Errc::BadMagic, "not a binary PGM (P5) stream");
    const int width = next_header_int(in);
    const int height = next_header_int(in);
    const int maxval = next_header_int(in);
    if (width < 1 || height < 1)
        throw Error(Errc::DimensionMismatch, "PGM declares empty image");
    if (maxval != 255)
        throw Error(Errc::BadInput, "only 8-bit PGM (maxval 255) is accepted");
    in.get();  // single whitespace after maxval
    Raster r = make_raster(width, height);
    std::vector<unsigned char> row(static_cast<std::size_t>(width));
    for (int y = 0; y < height; ++y) {
        in.read(reinterpret_cast<char*>(row.data()), width);
        if (static_cast<int>(in.gcount()) != width)
            throw Error(Errc::TruncatedStream, "PGM body shorter than header declares");
        for (int x = 0; x < width; ++x) r.at(x, y) = static_cast<double>(row[static_cast<std::size_t>(x)]);
    }
    return r;
}

Raster read_pgm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::BadInput, "cannot open for reading: " + path);
    return read_pgm(in);
}

void write_pgm(std::ostream& out, const Raster& raster) {
    out << "P5\n" << raster.width << ' ' << raster.height << "\n255\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(raster.width));
    for (int y = 0; y < raster.height; ++y) {
        for (int x = 0; x < raster.width; ++x) {
            double v = std::lround(raster.at(x, y));
            if (v < 0.0) v = 0.0;
            if (v > 255.0) v = 255.0;
            row[static_cast<std::size_t>(x)] = static_cast<unsigned char>(v);
        }
        out.write(reinterpret_cast<const char*>(row.data()), raster.width);
    }
}

void write_pgm_file(const std::string& path, const Raster& raster) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::BadInput, "cannot open for writing: " + path);
    write_pgm(out, raster);
}

}  // namespace salfuse
