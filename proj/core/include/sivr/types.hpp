#pragma once

#include <compare>
#include <string>

namespace sivr {

/// Axis-aligned box in original-image pixel coordinates, upper bound
/// exclusive: pixels x in [x1, x2), y in [y1, y2).
struct BBox {
  int x1 = 0;
  int y1 = 0;
  int x2 = 0;
  int y2 = 0;

  auto operator<=>(const BBox&) const = default;
  int width() const { return x2 - x1; }
  int height() const { return y2 - y1; }
  double area() const { return static_cast<double>(x2 - x1) * (y2 - y1); }
  bool valid() const { return x1 >= 0 && y1 >= 0 && x1 < x2 && y1 < y2; }
};

/// Renders a box the way the model emits it in text: "{x1, y1, x2, y2}".
std::string format_bbox(const BBox& box);

/// Reasoning level of an instruction.
enum class InstructionType { conversation, simple_reasoning, complex_reasoning };

std::string to_string(InstructionType type);
InstructionType instruction_type_from_string(const std::string& name);

inline constexpr InstructionType kAllInstructionTypes[] = {
    InstructionType::conversation,
    InstructionType::simple_reasoning,
    InstructionType::complex_reasoning,
};

}  // namespace sivr
