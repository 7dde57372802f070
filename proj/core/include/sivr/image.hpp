#pragma once

#include "sivr/autograd.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace sivr {

/// Compact 8-bit RGB image used for storage, rendering, and PNG sidecars.
struct Rgb8Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, 3 bytes per pixel

  Rgb8Image() = default;
  Rgb8Image(int width_, int height_)
      : width(width_), height(height_),
        pixels(static_cast<std::size_t>(width_) * height_ * 3, 255) {}

  std::uint8_t& at(int x, int y, int c) {
    return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
  std::uint8_t at(int x, int y, int c) const {
    return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
  bool operator==(const Rgb8Image&) const = default;
};

/// H x W x 3 image with values in [0, 1]; the input contract of the visual
/// encoder. Produced from Rgb8Image by dividing by 255.
struct ImageTensor {
  int width = 0;
  int height = 0;
  std::vector<double> data;  // row-major, 3 channels per pixel

  ImageTensor() = default;
  ImageTensor(int width_, int height_)
      : width(width_), height(height_),
        data(static_cast<std::size_t>(width_) * height_ * 3, 0.0) {}

  double& at(int x, int y, int c) {
    return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
  double at(int x, int y, int c) const {
    return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
};

ImageTensor to_tensor(const Rgb8Image& image);

/// Bilinear resample to out_w x out_h with corner-aligned sampling.
ImageTensor resize_bilinear(const ImageTensor& image, int out_w, int out_h);

/// Splits a square image into non-overlapping patch x patch tiles, row-major,
/// one row per tile: pixels row-major within the tile, RGB interleaved.
/// image must be square with side divisible by patch.
Mat to_patches(const ImageTensor& image, int patch);

struct NamedColor {
  const char* name;
  std::array<std::uint8_t, 3> rgb;
};

/// The 8-color palette used by the synthetic scenes.
const std::array<NamedColor, 8>& palette();

}  // namespace sivr
