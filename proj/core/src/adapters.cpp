#include "sivr/adapters.hpp"

#include <stdexcept>

namespace sivr {

std::string to_string(AdapterKind kind) {
  switch (kind) {
    case AdapterKind::linear: return "linear";
    case AdapterKind::mlp: return "mlp";
    case AdapterKind::transformer: return "transformer";
  }
  return "?";
}

AdapterKind adapter_kind_from_string(const std::string& name) {
  if (name == "linear") return AdapterKind::linear;
  if (name == "mlp") return AdapterKind::mlp;
  if (name == "transformer") return AdapterKind::transformer;
  throw std::invalid_argument("unknown adapter kind: " + name);
}

AudioAdapter::AudioAdapter(const AdapterConfig& cfg_, Rng& rng) : cfg(cfg_) {
  if (cfg.in_dim <= 0 || cfg.out_dim <= 0) {
    throw std::invalid_argument("audio adapter: dims must be positive");
  }
  switch (cfg.kind) {
    case AdapterKind::linear:
      proj = Linear("audio_adapter.proj", cfg.in_dim, cfg.out_dim, rng);
      break;
    case AdapterKind::mlp:
      fc1 = Linear("audio_adapter.fc1", cfg.in_dim, cfg.resolved_hidden(), rng);
      fc2 = Linear("audio_adapter.fc2", cfg.resolved_hidden(), cfg.out_dim, rng);
      break;
    case AdapterKind::transformer:
      blocks.reserve(static_cast<std::size_t>(cfg.n_blocks));
      for (int i = 0; i < cfg.n_blocks; ++i) {
        blocks.emplace_back("audio_adapter.block" + std::to_string(i), cfg.in_dim,
                            cfg.n_heads, rng);
      }
      proj = Linear("audio_adapter.proj", cfg.in_dim, cfg.out_dim, rng);
      break;
  }
}

Var AudioAdapter::apply(Tape& t, Var x) const {
  if (t.value(x).cols() != cfg.in_dim) {
    throw std::invalid_argument("audio adapter: input width mismatch");
  }
  switch (cfg.kind) {
    case AdapterKind::linear:
      return proj.apply(t, x);
    case AdapterKind::mlp:
      return fc2.apply(t, t.gelu(fc1.apply(t, x)));
    case AdapterKind::transformer: {
      for (const auto& block : blocks) x = block.apply(t, x, /*causal=*/false);
      return proj.apply(t, x);
    }
  }
  throw std::logic_error("audio adapter: unreachable");
}

void AudioAdapter::collect(std::vector<Parameter*>& out) {
  switch (cfg.kind) {
    case AdapterKind::linear:
      proj.collect(out);
      break;
    case AdapterKind::mlp:
      fc1.collect(out);
      fc2.collect(out);
      break;
    case AdapterKind::transformer:
      for (auto& b : blocks) b.collect(out);
      proj.collect(out);
      break;
  }
}

VisualAdapter::VisualAdapter(int in_dim, int hidden_dim, int out_dim, Rng& rng)
    : fc1("visual_adapter.fc1", in_dim, hidden_dim, rng),
      fc2("visual_adapter.fc2", hidden_dim, out_dim, rng) {}

Var VisualAdapter::apply(Tape& t, Var x) const {
  return fc2.apply(t, t.gelu(fc1.apply(t, x)));
}

void VisualAdapter::collect(std::vector<Parameter*>& out) {
  fc1.collect(out);
  fc2.collect(out);
}

}  // namespace sivr
