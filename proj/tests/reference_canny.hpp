#pragma once

#include "crbridge/canny.hpp"
#include "crbridge/image.hpp"

namespace testref {

// Naive single-function implementation of the same five pinned stages,
// written independently of the library code path and kept deliberately
// unoptimized. Used as the bit-exactness oracle.
crbridge::GrayImage naive_canny(const crbridge::GrayImage& img, const crbridge::CannyConfig& cfg);

}  // namespace testref
