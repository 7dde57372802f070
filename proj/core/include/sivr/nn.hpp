#pragma once

#include "sivr/autograd.hpp"
#include "sivr/rng.hpp"

#include <string>
#include <vector>

namespace sivr {

/// Fills a parameter with N(0, stddev^2) entries.
void init_normal(Parameter& p, Rng& rng, double stddev = 0.02);

/// Sinusoidal position table, length x dim. Even columns sine, odd cosine,
/// wavelengths geometric from 1 to 10000 as in the usual encoder recipe.
Mat sinusoidal_positions(int length, int dim);

/// Additive causal mask (0 on/below diagonal, -inf above), size n x n.
Mat causal_mask(int n);

struct Linear {
  Parameter w;  // in x out
  Parameter b;  // 1 x out

  Linear() = default;
  Linear(const std::string& name, int in, int out, Rng& rng, double stddev = 0.02);

  int in_dim() const { return static_cast<int>(w.value.rows()); }
  int out_dim() const { return static_cast<int>(w.value.cols()); }

  Var apply(Tape& t, Var x) const;
  void collect(std::vector<Parameter*>& out);
};

struct LayerNorm {
  Parameter gain;  // 1 x dim
  Parameter bias;  // 1 x dim

  LayerNorm() = default;
  LayerNorm(const std::string& name, int dim);

  Var apply(Tape& t, Var x) const;
  void collect(std::vector<Parameter*>& out);
};

struct MultiHeadAttention {
  Linear wq, wk, wv, wo;
  int n_heads = 1;

  MultiHeadAttention() = default;
  MultiHeadAttention(const std::string& name, int dim, int n_heads, Rng& rng);

  Var apply(Tape& t, Var x, bool causal) const;
  void collect(std::vector<Parameter*>& out);
};

/// Pre-norm residual block: x + attn(ln1(x)), then x + mlp(ln2(x)).
/// The MLP expands by a factor of 4 and uses exact GELU.
struct TransformerBlock {
  LayerNorm ln1, ln2;
  MultiHeadAttention attn;
  Linear fc1, fc2;

  TransformerBlock() = default;
  TransformerBlock(const std::string& name, int dim, int n_heads, Rng& rng);

  Var apply(Tape& t, Var x, bool causal) const;
  void collect(std::vector<Parameter*>& out);
};

/// 1-D convolution along rows (stride 1, zero-padded to the same length).
/// Implemented as shifted column concatenation followed by one matmul, so
/// it differentiates through both input and weights.
struct Conv1d {
  Parameter w;  // (kernel * in) x out
  Parameter b;  // 1 x out
  int kernel = 3;
  int in_dim = 0;

  Conv1d() = default;
  Conv1d(const std::string& name, int in, int out, int kernel, Rng& rng);

  Var apply(Tape& t, Var x) const;
  void collect(std::vector<Parameter*>& out);
};

}  // namespace sivr
