#pragma once

#include <string>

#include "twinlab/frame.hpp"

namespace twinlab {

// TBF container: magic "TBF1", little-endian u32 width, u32 height,
// f64 pixel pitch in micrometers, then width*height little-endian f32
// entries in row-major order. write_frame/read_frame round-trip bit-exactly.

Frame read_frame(const std::string& path);
void write_frame(const Frame& frame, const std::string& path);

}  // namespace twinlab
