#include "crbridge/pgm_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace crbridge {

namespace {

struct PgmHeader {
    int width = 0, height = 0, maxval = 0;
};

PgmHeader read_header(std::istream& in, const std::string& path) {
    std::string magic;
    in >> magic;
    if (magic != "P5") throw std::runtime_error(path + ": not a P5 PGM file");
    PgmHeader h;
    auto next_int = [&](int& out) {
        // skip whitespace and # comments
        int c = in.peek();
        while (c != EOF && (std::isspace(c) || c == '#')) {
            if (c == '#') {
                std::string line;
                std::getline(in, line);
            } else {
                in.get();
            }
            c = in.peek();
        }
        in >> out;
    };
    next_int(h.width);
    next_int(h.height);
    next_int(h.maxval);
    in.get();  // single whitespace before raster
    if (!in || h.width <= 0 || h.height <= 0) throw std::runtime_error(path + ": bad PGM header");
    return h;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

}  // namespace

void write_pgm8(const std::string& path, const GrayImage& img) {
    std::ofstream out = open_out(path);
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    std::vector<uint8_t> row(img.pixels.size());
    for (size_t i = 0; i < img.pixels.size(); ++i) {
        const float v = std::clamp(img.pixels[i], 0.0f, 1.0f);
        row[i] = static_cast<uint8_t>(std::lround(v * 255.0f));
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

GrayImage read_pgm8(const std::string& path) {
    std::ifstream in = open_in(path);
    const PgmHeader h = read_header(in, path);
    if (h.maxval != 255) throw std::runtime_error(path + ": expected 8-bit PGM");
    GrayImage img(h.width, h.height);
    std::vector<uint8_t> buf(img.pixels.size());
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!in) throw std::runtime_error(path + ": truncated PGM raster");
    for (size_t i = 0; i < buf.size(); ++i) img.pixels[i] = buf[i] / 255.0f;
    return img;
}

void write_depth_pgm16(const std::string& path, const DepthImage& img) {
    std::ofstream out = open_out(path);
    out << "P5\n" << img.width << " " << img.height << "\n65535\n";
    std::vector<uint8_t> buf(img.depths.size() * 2);
    for (size_t i = 0; i < img.depths.size(); ++i) {
        const double mm = std::clamp(static_cast<double>(img.depths[i]) * 1000.0, 0.0, 65535.0);
        const uint16_t v = static_cast<uint16_t>(std::lround(mm));
        buf[2 * i] = static_cast<uint8_t>(v >> 8);
        buf[2 * i + 1] = static_cast<uint8_t>(v & 0xff);
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

DepthImage read_depth_pgm16(const std::string& path) {
    std::ifstream in = open_in(path);
    const PgmHeader h = read_header(in, path);
    if (h.maxval != 65535) throw std::runtime_error(path + ": expected 16-bit PGM");
    DepthImage img(h.width, h.height);
    std::vector<uint8_t> buf(img.depths.size() * 2);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!in) throw std::runtime_error(path + ": truncated PGM raster");
    for (size_t i = 0; i < img.depths.size(); ++i) {
        const uint16_t v = static_cast<uint16_t>((buf[2 * i] << 8) | buf[2 * i + 1]);
        img.depths[i] = v / 1000.0f;
    }
    return img;
}

}  // namespace crbridge
