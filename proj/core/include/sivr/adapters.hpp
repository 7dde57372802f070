#pragma once

#include "sivr/nn.hpp"

#include <string>
#include <vector>

namespace sivr {

enum class AdapterKind { linear, mlp, transformer };

std::string to_string(AdapterKind kind);
AdapterKind adapter_kind_from_string(const std::string& name);

struct AdapterConfig {
  AdapterKind kind = AdapterKind::linear;
  int in_dim = 768;
  int out_dim = 256;
  int hidden_dim = 0;  // mlp only; 0 resolves to 2 * in_dim
  int n_blocks = 1;    // transformer only
  int n_heads = 4;     // transformer only

  int resolved_hidden() const { return hidden_dim > 0 ? hidden_dim : 2 * in_dim; }
};

/// Projects audio encoder output to the LM width. Three interchangeable
/// variants: a single affine map, affine-GELU-affine, or self-attention
/// blocks at the input width followed by one affine projection. All preserve
/// token count.
struct AudioAdapter {
  AdapterConfig cfg;
  Linear fc1, fc2;  // mlp
  std::vector<TransformerBlock> blocks;
  Linear proj;  // linear and transformer kinds

  AudioAdapter() = default;
  AudioAdapter(const AdapterConfig& cfg, Rng& rng);

  Var apply(Tape& t, Var x) const;
  void collect(std::vector<Parameter*>& out);
};

/// Fixed visual bridge: affine, GELU, affine.
struct VisualAdapter {
  Linear fc1, fc2;

  VisualAdapter() = default;
  VisualAdapter(int in_dim, int hidden_dim, int out_dim, Rng& rng);

  Var apply(Tape& t, Var x) const;
  void collect(std::vector<Parameter*>& out);
};

}  // namespace sivr
