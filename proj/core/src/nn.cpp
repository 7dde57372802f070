#include "sivr/nn.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sivr {

void init_normal(Parameter& p, Rng& rng, double stddev) {
  for (Eigen::Index c = 0; c < p.value.cols(); ++c) {
    for (Eigen::Index r = 0; r < p.value.rows(); ++r) {
      p.value(r, c) = rng.normal(0.0, stddev);
    }
  }
}

Mat sinusoidal_positions(int length, int dim) {
  Mat out(length, dim);
  for (int pos = 0; pos < length; ++pos) {
    for (int i = 0; i < dim; ++i) {
      const double exponent = static_cast<double>(2 * (i / 2)) / static_cast<double>(dim);
      const double angle = pos / std::pow(10000.0, exponent);
      out(pos, i) = (i % 2 == 0) ? std::sin(angle) : std::cos(angle);
    }
  }
  return out;
}

Mat causal_mask(int n) {
  Mat mask = Mat::Zero(n, n);
  const double ninf = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < n; ++r) {
    for (int c = r + 1; c < n; ++c) mask(r, c) = ninf;
  }
  return mask;
}

Linear::Linear(const std::string& name, int in, int out, Rng& rng, double stddev)
    : w(name + ".w", in, out), b(name + ".b", 1, out) {
  init_normal(w, rng, stddev);
}

Var Linear::apply(Tape& t, Var x) const {
  if (t.value(x).cols() != w.value.rows()) {
    throw std::invalid_argument(w.name + ": input width " +
                                std::to_string(t.value(x).cols()) +
                                " does not match " + std::to_string(w.value.rows()));
  }
  auto& self = const_cast<Linear&>(*this);
  return t.add_rowvec(t.matmul(x, t.param(self.w)), t.param(self.b));
}

void Linear::collect(std::vector<Parameter*>& out) {
  out.push_back(&w);
  out.push_back(&b);
}

LayerNorm::LayerNorm(const std::string& name, int dim)
    : gain(name + ".gain", 1, dim), bias(name + ".bias", 1, dim) {
  gain.value.setOnes();
}

Var LayerNorm::apply(Tape& t, Var x) const {
  auto& self = const_cast<LayerNorm&>(*this);
  return t.rowwise_affine(t.layernorm_rows(x), t.param(self.gain), t.param(self.bias));
}

void LayerNorm::collect(std::vector<Parameter*>& out) {
  out.push_back(&gain);
  out.push_back(&bias);
}

MultiHeadAttention::MultiHeadAttention(const std::string& name, int dim, int n_heads_,
                                       Rng& rng)
    : wq(name + ".wq", dim, dim, rng),
      wk(name + ".wk", dim, dim, rng),
      wv(name + ".wv", dim, dim, rng),
      wo(name + ".wo", dim, dim, rng),
      n_heads(n_heads_) {
  if (dim % n_heads != 0) {
    throw std::invalid_argument(name + ": dim must be divisible by n_heads");
  }
}

Var MultiHeadAttention::apply(Tape& t, Var x, bool causal) const {
  const int dim = wq.out_dim();
  const int head_dim = dim / n_heads;
  const int len = static_cast<int>(t.value(x).rows());
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(head_dim));

  Var q = wq.apply(t, x);
  Var k = wk.apply(t, x);
  Var v = wv.apply(t, x);

  Mat mask;
  if (causal) mask = causal_mask(len);

  std::vector<Var> heads;
  heads.reserve(static_cast<std::size_t>(n_heads));
  for (int h = 0; h < n_heads; ++h) {
    Var qh = t.slice_cols(q, h * head_dim, head_dim);
    Var kh = t.slice_cols(k, h * head_dim, head_dim);
    Var vh = t.slice_cols(v, h * head_dim, head_dim);
    Var scores = t.scale(t.matmul_nt(qh, kh), inv_sqrt);
    if (causal) scores = t.add_inplace_const(scores, mask);
    Var att = t.softmax_rows(scores);
    heads.push_back(t.matmul(att, vh));
  }
  return wo.apply(t, t.concat_cols(heads));
}

void MultiHeadAttention::collect(std::vector<Parameter*>& out) {
  wq.collect(out);
  wk.collect(out);
  wv.collect(out);
  wo.collect(out);
}

TransformerBlock::TransformerBlock(const std::string& name, int dim, int n_heads, Rng& rng)
    : ln1(name + ".ln1", dim),
      ln2(name + ".ln2", dim),
      attn(name + ".attn", dim, n_heads, rng),
      fc1(name + ".fc1", dim, 4 * dim, rng),
      fc2(name + ".fc2", 4 * dim, dim, rng) {}

Var TransformerBlock::apply(Tape& t, Var x, bool causal) const {
  Var h = t.add(x, attn.apply(t, ln1.apply(t, x), causal));
  Var m = fc2.apply(t, t.gelu(fc1.apply(t, ln2.apply(t, h))));
  return t.add(h, m);
}

void TransformerBlock::collect(std::vector<Parameter*>& out) {
  ln1.collect(out);
  ln2.collect(out);
  attn.collect(out);
  fc1.collect(out);
  fc2.collect(out);
}

Conv1d::Conv1d(const std::string& name, int in, int out, int kernel_, Rng& rng)
    : w(name + ".w", kernel_ * in, out), b(name + ".b", 1, out), kernel(kernel_), in_dim(in) {
  if (kernel % 2 == 0) throw std::invalid_argument(name + ": kernel must be odd");
  init_normal(w, rng, 0.02);
}

Var Conv1d::apply(Tape& t, Var x) const {
  const Mat& vx = t.value(x);
  if (vx.cols() != in_dim) {
    throw std::invalid_argument(w.name + ": input width mismatch");
  }
  const int len = static_cast<int>(vx.rows());
  const int half = kernel / 2;

  // Column block o holds the input shifted by (o - half) rows, zero padded.
  std::vector<Var> shifted;
  shifted.reserve(static_cast<std::size_t>(kernel));
  for (int o = -half; o <= half; ++o) {
    if (o == 0) {
      shifted.push_back(x);
      continue;
    }
    const int n = len - std::abs(o);
    Var pad = t.constant(Mat::Zero(std::abs(o), in_dim));
    if (n <= 0) {
      shifted.push_back(t.constant(Mat::Zero(len, in_dim)));
    } else if (o < 0) {
      // Row r sees input row r + o: leading zeros.
      shifted.push_back(t.concat_rows({pad, t.slice_rows(x, 0, n)}));
    } else {
      shifted.push_back(t.concat_rows({t.slice_rows(x, o, n), pad}));
    }
  }
  auto& self = const_cast<Conv1d&>(*this);
  return t.add_rowvec(t.matmul(t.concat_cols(shifted), t.param(self.w)),
                      t.param(self.b));
}

void Conv1d::collect(std::vector<Parameter*>& out) {
  out.push_back(&w);
  out.push_back(&b);
}

}  // namespace sivr
