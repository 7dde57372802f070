#include "sivr/scene.hpp"

#include "sivr/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace sivr {

namespace {

constexpr int kKinds = 3;
constexpr int kColors = 8;

const char* kind_phrase(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::circle: return "round object";
    case ShapeKind::square: return "four sided object";
    case ShapeKind::triangle: return "three cornered object";
  }
  return "object";
}

const char* kind_trait(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::circle: return "a smooth round outline";
    case ShapeKind::square: return "four equal corners";
    case ShapeKind::triangle: return "three pointed corners";
  }
  return "a plain outline";
}

double center_x(const BBox& b) { return 0.5 * (b.x1 + b.x2); }
double center_y(const BBox& b) { return 0.5 * (b.y1 + b.y2); }

/// Dominant-axis relation of shape s relative to anchor a.
enum class Relation { left, right, above, below };

const char* relation_phrase(Relation r) {
  switch (r) {
    case Relation::left: return "to the left of";
    case Relation::right: return "to the right of";
    case Relation::above: return "above";
    case Relation::below: return "below";
  }
  return "near";
}

const char* relation_look(Relation r) {
  switch (r) {
    case Relation::left: return "to the left";
    case Relation::right: return "to the right";
    case Relation::above: return "upward";
    case Relation::below: return "downward";
  }
  return "around";
}

Relation relation_of(const ShapeSpec& s, const ShapeSpec& a) {
  const double dx = center_x(s.bbox) - center_x(a.bbox);
  const double dy = center_y(s.bbox) - center_y(a.bbox);
  if (std::abs(dx) >= std::abs(dy)) return dx < 0 ? Relation::left : Relation::right;
  return dy < 0 ? Relation::above : Relation::below;
}

std::string region_phrase(const SceneSpec& spec, const BBox& b) {
  const double fx = center_x(b) / spec.width;
  const double fy = center_y(b) / spec.height;
  const char* vert = fy < 1.0 / 3 ? "top" : (fy < 2.0 / 3 ? "middle" : "bottom");
  const char* horz = fx < 1.0 / 3 ? "left" : (fx < 2.0 / 3 ? "center" : "right");
  if (std::string(vert) == "middle" && std::string(horz) == "center") return "center";
  return std::string(vert) + " " + horz;
}

void validate(const SceneSpec& spec) {
  if (spec.shapes.empty()) throw std::invalid_argument("scene has no shapes");
  if (spec.target < 0 || spec.target >= static_cast<int>(spec.shapes.size())) {
    throw std::invalid_argument("scene target index out of range");
  }
  for (std::size_t i = 0; i < spec.shapes.size(); ++i) {
    const auto& s = spec.shapes[i];
    if (!s.bbox.valid() || s.bbox.x2 > spec.width || s.bbox.y2 > spec.height) {
      throw std::invalid_argument("shape box outside canvas");
    }
    for (std::size_t j = i + 1; j < spec.shapes.size(); ++j) {
      if (spec.shapes[j].kind == s.kind && spec.shapes[j].color == s.color) {
        throw std::invalid_argument("ambiguous scene: duplicate (kind, color)");
      }
    }
  }
}

}  // namespace

std::string to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::circle: return "circle";
    case ShapeKind::square: return "square";
    case ShapeKind::triangle: return "triangle";
  }
  return "?";
}

SceneSpec synth_scene(std::uint64_t seed, int n_shapes, int width, int height) {
  if (n_shapes < 2 || n_shapes > 6) {
    throw std::invalid_argument("synth_scene: n_shapes must be in [2, 6]");
  }
  Rng rng(mix_seed(seed, 0x5ce9eULL));
  SceneSpec spec;
  spec.width = width;
  spec.height = height;

  // Distinct (kind, color) combinations keep referring expressions unique.
  std::vector<int> combos(kKinds * kColors);
  for (std::size_t i = 0; i < combos.size(); ++i) combos[i] = static_cast<int>(i);
  rng.shuffle(combos);

  const int min_side = std::max(12, std::min(width, height) / 8);
  const int max_side = std::min(width, height) / 2 - 8;
  for (int i = 0; i < n_shapes; ++i) {
    ShapeSpec s;
    s.kind = static_cast<ShapeKind>(combos[static_cast<std::size_t>(i)] % kKinds);
    s.color = combos[static_cast<std::size_t>(i)] / kKinds;
    const int w = min_side + rng.index(max_side - min_side + 1);
    const int h = min_side + rng.index(max_side - min_side + 1);
    const int x1 = rng.index(width - w);
    const int y1 = rng.index(height - h);
    s.bbox = BBox{x1, y1, x1 + w, y1 + h};
    spec.shapes.push_back(s);
  }
  spec.target = rng.index(n_shapes);
  return spec;
}

Rgb8Image render_scene(const SceneSpec& spec) {
  validate(spec);
  Rgb8Image image(spec.width, spec.height);
  for (const auto& shape : spec.shapes) {
    const auto& rgb = palette()[static_cast<std::size_t>(shape.color)].rgb;
    const BBox& b = shape.bbox;
    const double cx = 0.5 * (b.x1 + b.x2);
    const double cy = 0.5 * (b.y1 + b.y2);
    const double rx = 0.5 * (b.x2 - b.x1);
    const double ry = 0.5 * (b.y2 - b.y1);
    for (int y = b.y1; y < b.y2; ++y) {
      for (int x = b.x1; x < b.x2; ++x) {
        const double px = x + 0.5;
        const double py = y + 0.5;
        bool inside = true;
        if (shape.kind == ShapeKind::circle) {
          const double nx = (px - cx) / rx;
          const double ny = (py - cy) / ry;
          inside = nx * nx + ny * ny <= 1.0;
        } else if (shape.kind == ShapeKind::triangle) {
          // Apex at top center, base along the bottom edge.
          const double t = (py - b.y1) / (b.y2 - b.y1);  // 0 top .. 1 bottom
          const double half = t * rx;
          inside = px >= cx - half && px <= cx + half;
        }
        if (inside) {
          for (int c = 0; c < 3; ++c) image.at(x, y, c) = rgb[static_cast<std::size_t>(c)];
        }
      }
    }
  }
  return image;
}

InstructionPair make_instruction(const SceneSpec& spec, InstructionType type,
                                 std::uint64_t seed) {
  validate(spec);
  Rng rng(mix_seed(seed, 0x1457ULL));
  const ShapeSpec& target = spec.target_shape();
  const std::string color = palette()[static_cast<std::size_t>(target.color)].name;
  const std::string kind = to_string(target.kind);
  const std::string phrase = kind_phrase(target.kind);
  const std::string box = format_bbox(target.bbox);
  const int variant = rng.index(3);

  InstructionPair out;
  if (type == InstructionType::conversation) {
    switch (variant) {
      case 0: out.instruction = "Where is the " + color + " " + kind + "?"; break;
      case 1: out.instruction = "Find the " + color + " " + kind + " in the picture."; break;
      default: out.instruction = "Can you point out the " + color + " " + kind + "?"; break;
    }
    out.response = "The " + color + " " + kind + " is located at " + box + ".";
    return out;
  }

  if (type == InstructionType::simple_reasoning) {
    switch (variant) {
      case 0: out.instruction = "Where is the only " + phrase + " that is " + color + "?"; break;
      case 1: out.instruction = "Locate the " + color + " " + phrase + " in this scene."; break;
      default:
        out.instruction = "There is a single " + color + " " + phrase + ". Where is it?";
        break;
    }
    out.response = "The " + color + " " + kind + " is located at " + box + ". It sits in the " +
                   region_phrase(spec, target.bbox) + " of the image.";
    return out;
  }

  // Complex reasoning: anchor on another shape when the relation singles the
  // target out among shapes of its kind; otherwise fall back to a color
  // qualified description, which is unique by construction.
  int anchor = -1;
  Relation rel = Relation::left;
  for (std::size_t a = 0; a < spec.shapes.size() && anchor < 0; ++a) {
    if (static_cast<int>(a) == spec.target) continue;
    const Relation r = relation_of(target, spec.shapes[a]);
    int hits = 0;
    for (std::size_t s = 0; s < spec.shapes.size(); ++s) {
      if (static_cast<int>(s) == static_cast<int>(a)) continue;
      if (spec.shapes[s].kind == target.kind && relation_of(spec.shapes[s], spec.shapes[a]) == r) {
        ++hits;
      }
    }
    if (hits == 1) {
      anchor = static_cast<int>(a);
      rel = r;
    }
  }

  if (anchor >= 0) {
    const ShapeSpec& a = spec.shapes[static_cast<std::size_t>(anchor)];
    const std::string a_color = palette()[static_cast<std::size_t>(a.color)].name;
    const std::string a_kind = to_string(a.kind);
    switch (variant) {
      case 0:
        out.instruction = "Starting from the " + a_color + " " + a_kind + ", look " +
                          relation_look(rel) + ". Which " + phrase +
                          " do you find, and where is it?";
        break;
      case 1:
        out.instruction = "Identify the " + phrase + " " + relation_phrase(rel) + " the " +
                          a_color + " " + a_kind + " and give its location.";
        break;
      default:
        out.instruction = "Among the shapes " + relation_phrase(rel) + " the " + a_color + " " +
                          a_kind + ", find the " + phrase + " and report where it is.";
        break;
    }
    out.response = "That is the " + color + " " + kind + " at " + box + ". It shows " +
                   kind_trait(target.kind) + " and lies " + relation_phrase(rel) + " the " +
                   a_color + " " + a_kind + ".";
    return out;
  }

  out.instruction = "This scene contains " + std::to_string(spec.shapes.size()) +
                    " shapes. Find the " + color + " " + phrase +
                    " and explain where it sits.";
  out.response = "That is the " + color + " " + kind + " at " + box + ". It shows " +
                 kind_trait(target.kind) + " and sits in the " +
                 region_phrase(spec, target.bbox) + " of the image.";
  return out;
}

}  // namespace sivr
