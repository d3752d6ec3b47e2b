#pragma once

#include <string>

#include "crbridge/image.hpp"

namespace crbridge {

// P5 8-bit: pixel byte = round(255 * intensity).
void write_pgm8(const std::string& path, const GrayImage& img);
GrayImage read_pgm8(const std::string& path);

// P5 16-bit big-endian, depth in millimeters, 0 = no return.
void write_depth_pgm16(const std::string& path, const DepthImage& img);
DepthImage read_depth_pgm16(const std::string& path);

}  // namespace crbridge
