#pragma once

#include "sivr/image.hpp"

#include <string>

namespace sivr {

/// Writes an 8-bit RGB PNG. Throws DataError on I/O failure.
void write_png(const Rgb8Image& image, const std::string& path);

/// Reads an 8-bit RGB PNG. Gray and palette images are expanded to RGB;
/// an alpha channel is rejected (three channels required). Throws DataError.
Rgb8Image read_png(const std::string& path);

}  // namespace sivr
