#pragma once

#include "sivr/image.hpp"
#include "sivr/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sivr {

enum class ShapeKind { circle, square, triangle };

std::string to_string(ShapeKind kind);

struct ShapeSpec {
  ShapeKind kind = ShapeKind::circle;
  int color = 0;  // palette() index
  BBox bbox;
};

/// A synthetic scene: shapes drawn back-to-front in vector order over a
/// white canvas. No two shapes share (kind, color), so "the <color> <kind>"
/// always has a unique referent.
struct SceneSpec {
  int width = 224;
  int height = 224;
  std::vector<ShapeSpec> shapes;
  int target = 0;

  const ShapeSpec& target_shape() const { return shapes[static_cast<std::size_t>(target)]; }
};

/// Deterministic scene draw. 2 <= n_shapes <= 6; throws std::invalid_argument
/// outside that range.
SceneSpec synth_scene(std::uint64_t seed, int n_shapes, int width = 224, int height = 224);

/// Rasterizes the scene. Squares fill their box; circles are the inscribed
/// ellipse; triangles are apex-top isoceles within the box. Pixel centers
/// decide membership.
Rgb8Image render_scene(const SceneSpec& spec);

struct InstructionPair {
  std::string instruction;
  std::string response;
};

/// Builds a (question, reference answer) pair for the target shape.
/// Conversation-level questions name the shape; reasoning levels refer to it
/// through attributes or spatial relations. The response always embeds the
/// target box as "{x1, y1, x2, y2}".
InstructionPair make_instruction(const SceneSpec& spec, InstructionType type,
                                 std::uint64_t seed);

}  // namespace sivr
