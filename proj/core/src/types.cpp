#include "sivr/types.hpp"

#include <stdexcept>

namespace sivr {

std::string format_bbox(const BBox& box) {
  return "{" + std::to_string(box.x1) + ", " + std::to_string(box.y1) + ", " +
         std::to_string(box.x2) + ", " + std::to_string(box.y2) + "}";
}

std::string to_string(InstructionType type) {
  switch (type) {
    case InstructionType::conversation: return "conversation";
    case InstructionType::simple_reasoning: return "simple_reasoning";
    case InstructionType::complex_reasoning: return "complex_reasoning";
  }
  return "?";
}

InstructionType instruction_type_from_string(const std::string& name) {
  if (name == "conversation") return InstructionType::conversation;
  if (name == "simple_reasoning") return InstructionType::simple_reasoning;
  if (name == "complex_reasoning") return InstructionType::complex_reasoning;
  throw std::invalid_argument("unknown instruction type: " + name);
}

}  // namespace sivr
