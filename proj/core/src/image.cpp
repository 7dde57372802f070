#include "sivr/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sivr {

ImageTensor to_tensor(const Rgb8Image& image) {
  ImageTensor out(image.width, image.height);
  for (std::size_t i = 0; i < image.pixels.size(); ++i) {
    out.data[i] = image.pixels[i] / 255.0;
  }
  return out;
}

ImageTensor resize_bilinear(const ImageTensor& image, int out_w, int out_h) {
  if (image.width < 1 || image.height < 1) {
    throw std::invalid_argument("resize_bilinear: empty image");
  }
  ImageTensor out(out_w, out_h);
  const double sx = out_w > 1 ? static_cast<double>(image.width - 1) / (out_w - 1) : 0.0;
  const double sy = out_h > 1 ? static_cast<double>(image.height - 1) / (out_h - 1) : 0.0;
  for (int y = 0; y < out_h; ++y) {
    const double fy = y * sy;
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, image.height - 1);
    const double wy = fy - y0;
    for (int x = 0; x < out_w; ++x) {
      const double fx = x * sx;
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, image.width - 1);
      const double wx = fx - x0;
      for (int c = 0; c < 3; ++c) {
        const double top = (1.0 - wx) * image.at(x0, y0, c) + wx * image.at(x1, y0, c);
        const double bot = (1.0 - wx) * image.at(x0, y1, c) + wx * image.at(x1, y1, c);
        out.at(x, y, c) = (1.0 - wy) * top + wy * bot;
      }
    }
  }
  return out;
}

Mat to_patches(const ImageTensor& image, int patch) {
  if (image.width != image.height || patch <= 0 || image.width % patch != 0) {
    throw std::invalid_argument("to_patches: image side must be a multiple of patch");
  }
  const int per_side = image.width / patch;
  const int n = per_side * per_side;
  Mat out(n, patch * patch * 3);
  for (int py = 0; py < per_side; ++py) {
    for (int px = 0; px < per_side; ++px) {
      const int row = py * per_side + px;
      int col = 0;
      for (int y = 0; y < patch; ++y) {
        for (int x = 0; x < patch; ++x) {
          for (int c = 0; c < 3; ++c) {
            out(row, col++) = image.at(px * patch + x, py * patch + y, c);
          }
        }
      }
    }
  }
  return out;
}

const std::array<NamedColor, 8>& palette() {
  static const std::array<NamedColor, 8> kPalette = {{
      {"red", {220, 40, 40}},
      {"green", {40, 170, 60}},
      {"blue", {40, 70, 220}},
      {"yellow", {235, 220, 50}},
      {"orange", {240, 140, 30}},
      {"purple", {140, 60, 180}},
      {"cyan", {60, 200, 210}},
      {"brown", {130, 90, 50}},
  }};
  return kPalette;
}

}  // namespace sivr
