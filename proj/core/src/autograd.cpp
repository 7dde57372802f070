#include "sivr/autograd.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace sivr {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

double gelu_scalar(double x) { return 0.5 * x * (1.0 + std::erf(x * kInvSqrt2)); }

double gelu_grad_scalar(double x) {
  const double phi = 0.5 * (1.0 + std::erf(x * kInvSqrt2));
  const double pdf = kInvSqrt2Pi * std::exp(-0.5 * x * x);
  return phi + x * pdf;
}

}  // namespace

Var Tape::push(Mat value, bool needs_grad) {
  Node node;
  node.value = std::move(value);
  node.needs_grad = needs_grad;
  if (needs_grad) {
    node.grad = Mat::Zero(node.value.rows(), node.value.cols());
  }
  nodes_.push_back(std::move(node));
  return Var{static_cast<int>(nodes_.size()) - 1};
}

Var Tape::constant(Mat value) { return push(std::move(value), false); }

Var Tape::param(Parameter& p) {
  Var v = push(p.value, true);
  nodes_[v.id].source = &p;
  return v;
}

Var Tape::add(Var a, Var b) {
  const Mat& va = value(a);
  const Mat& vb = value(b);
  if (va.rows() != vb.rows() || va.cols() != vb.cols()) {
    throw std::invalid_argument("add: shape mismatch");
  }
  Var out = push(va + vb, needs_grad(a) || needs_grad(b));
  if (!nodes_[out.id].needs_grad) return out;
  nodes_[out.id].backfn = [a, b, out](Tape& t) {
    const Mat& g = t.grad(out);
    if (t.needs_grad(a)) t.grad_ref(a) += g;
    if (t.needs_grad(b)) t.grad_ref(b) += g;
  };
  return out;
}

Var Tape::add_rowvec(Var a, Var row) {
  const Mat& va = value(a);
  const Mat& vr = value(row);
  if (vr.rows() != 1 || vr.cols() != va.cols()) {
    throw std::invalid_argument("add_rowvec: row must be 1 x cols(a)");
  }
  Mat out = va;
  out.rowwise() += vr.row(0);
  Var o = push(std::move(out), needs_grad(a) || needs_grad(row));
  if (!nodes_[o.id].needs_grad) return o;
  nodes_[o.id].backfn = [a, row, o](Tape& t) {
    const Mat& g = t.grad(o);
    if (t.needs_grad(a)) t.grad_ref(a) += g;
    if (t.needs_grad(row)) t.grad_ref(row).row(0) += g.colwise().sum();
  };
  return o;
}

Var Tape::add_inplace_const(Var a, const Mat& c) {
  const Mat& va = value(a);
  if (va.rows() != c.rows() || va.cols() != c.cols()) {
    throw std::invalid_argument("add_inplace_const: shape mismatch");
  }
  Var out = push(va + c, needs_grad(a));
  if (!nodes_[out.id].needs_grad) return out;
  nodes_[out.id].backfn = [a, out](Tape& t) { t.grad_ref(a) += t.grad(out); };
  return out;
}

Var Tape::scale(Var a, double s) {
  Var out = push(value(a) * s, needs_grad(a));
  if (!nodes_[out.id].needs_grad) return out;
  nodes_[out.id].backfn = [a, out, s](Tape& t) { t.grad_ref(a) += s * t.grad(out); };
  return out;
}

Var Tape::gelu(Var a) {
  const Mat& va = value(a);
  Mat out = va.unaryExpr([](double x) { return gelu_scalar(x); });
  Var o = push(std::move(out), needs_grad(a));
  if (!nodes_[o.id].needs_grad) return o;
  nodes_[o.id].backfn = [a, o](Tape& t) {
    const Mat& x = t.value(a);
    const Mat& g = t.grad(o);
    t.grad_ref(a).array() +=
        g.array() * x.unaryExpr([](double v) { return gelu_grad_scalar(v); }).array();
  };
  return o;
}

Var Tape::layernorm_rows(Var a, double eps) {
  const Mat& x = value(a);
  const Eigen::Index n = x.cols();
  Mat xhat(x.rows(), n);
  Eigen::VectorXd rstd(x.rows());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double mean = x.row(r).mean();
    const double var = (x.row(r).array() - mean).square().sum() / static_cast<double>(n);
    const double rs = 1.0 / std::sqrt(var + eps);
    rstd(r) = rs;
    xhat.row(r) = (x.row(r).array() - mean) * rs;
  }
  Var o = push(xhat, needs_grad(a));
  if (!nodes_[o.id].needs_grad) return o;
  nodes_[o.id].backfn = [a, o, rstd = std::move(rstd)](Tape& t) {
    const Mat& y = t.value(o);  // xhat
    const Mat& g = t.grad(o);
    Mat& ga = t.grad_ref(a);
    const double n = static_cast<double>(y.cols());
    for (Eigen::Index r = 0; r < y.rows(); ++r) {
      const double gmean = g.row(r).mean();
      const double gdoty = (g.row(r).array() * y.row(r).array()).sum() / n;
      ga.row(r).array() +=
          rstd(r) * (g.row(r).array() - gmean - y.row(r).array() * gdoty);
    }
  };
  return o;
}

Var Tape::rowwise_affine(Var a, Var gain, Var bias) {
  const Mat& x = value(a);
  const Mat& gn = value(gain);
  const Mat& bs = value(bias);
  if (gn.rows() != 1 || bs.rows() != 1 || gn.cols() != x.cols() || bs.cols() != x.cols()) {
    throw std::invalid_argument("rowwise_affine: gain/bias must be 1 x cols(a)");
  }
  Mat out = x.array().rowwise() * gn.row(0).array();
  out.rowwise() += bs.row(0);
  Var o = push(std::move(out), needs_grad(a) || needs_grad(gain) || needs_grad(bias));
  if (!nodes_[o.id].needs_grad) return o;
  nodes_[o.id].backfn = [a, gain, bias, o](Tape& t) {
    const Mat& x = t.value(a);
    const Mat& gn = t.value(gain);
    const Mat& g = t.grad(o);
    if (t.needs_grad(a)) {
      t.grad_ref(a).array() += g.array().rowwise() * gn.row(0).array();
    }
    if (t.needs_grad(gain)) {
      t.grad_ref(gain).row(0) += (g.array() * x.array()).colwise().sum().matrix();
    }
    if (t.needs_grad(bias)) {
      t.grad_ref(bias).row(0) += g.colwise().sum();
    }
  };
  return o;
}

Var Tape::softmax_rows(Var a) {
  const Mat& x = value(a);
  Mat out(x.rows(), x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double mx = x.row(r).maxCoeff();
    out.row(r) = (x.row(r).array() - mx).exp();
    out.row(r) /= out.row(r).sum();
  }
  Var o = push(std::move(out), needs_grad(a));
  if (!nodes_[o.id].needs_grad) return o;
  nodes_[o.id].backfn = [a, o](Tape& t) {
    const Mat& y = t.value(o);
    const Mat& g = t.grad(o);
    Mat& ga = t.grad_ref(a);
    for (Eigen::Index r = 0; r < y.rows(); ++r) {
      const double dot = (g.row(r).array() * y.row(r).array()).sum();
      ga.row(r).array() += y.row(r).array() * (g.row(r).array() - dot);
    }
  };
  return o;
}

Var Tape::matmul(Var a, Var b) {
  const Mat& va = value(a);
  const Mat& vb = value(b);
  if (va.cols() != vb.rows()) {
    throw std::invalid_argument("matmul: inner dimension mismatch");
  }
  Var o = push(va * vb, needs_grad(a) || needs_grad(b));
  if (!nodes_[o.id].needs_grad) return o;
  nodes_[o.id].backfn = [a, b, o](Tape& t) {
    const Mat& g = t.grad(o);
    if (t.needs_grad(a)) t.grad_ref(a).noalias() += g * t.value(b).transpose();
    if (t.needs_grad(b)) t.grad_ref(b).noalias() += t.value(a).transpose() * g;
  };
  return o;
}

Var Tape::matmul_nt(Var a, Var b) {
  const Mat& va = value(a);
  const Mat& vb = value(b);
  if (va.cols() != vb.cols()) {
    throw std::invalid_argument("matmul_nt: column dimension mismatch");
  }
  Var o = push(va * vb.transpose(), needs_grad(a) || needs_grad(b));
  if (!nodes_[o.id].needs_grad) return o;
  nodes_[o.id].backfn = [a, b, o](Tape& t) {
    const Mat& g = t.grad(o);
    if (t.needs_grad(a)) t.grad_ref(a).noalias() += g * t.value(b);
    if (t.needs_grad(b)) t.grad_ref(b).noalias() += g.transpose() * t.value(a);
  };
  return o;
}

Var Tape::slice_rows(Var a, int begin, int count) {
  const Mat& va = value(a);
  if (begin < 0 || count < 0 || begin + count > va.rows()) {
    throw std::invalid_argument("slice_rows: out of range");
  }
  Var o = push(va.middleRows(begin, count), needs_grad(a));
  if (!nodes_[o.id].needs_grad) return o;
  nodes_[o.id].backfn = [a, o, begin, count](Tape& t) {
    t.grad_ref(a).middleRows(begin, count) += t.grad(o);
  };
  return o;
}

Var Tape::slice_cols(Var a, int begin, int count) {
  const Mat& va = value(a);
  if (begin < 0 || count < 0 || begin + count > va.cols()) {
    throw std::invalid_argument("slice_cols: out of range");
  }
  Var o = push(va.middleCols(begin, count), needs_grad(a));
  if (!nodes_[o.id].needs_grad) return o;
  nodes_[o.id].backfn = [a, o, begin, count](Tape& t) {
    t.grad_ref(a).middleCols(begin, count) += t.grad(o);
  };
  return o;
}

Var Tape::concat_rows(const std::vector<Var>& parts) {
  if (parts.empty()) throw std::invalid_argument("concat_rows: empty");
  Eigen::Index rows = 0;
  const Eigen::Index cols = value(parts.front()).cols();
  bool any_grad = false;
  for (Var p : parts) {
    if (value(p).cols() != cols) {
      throw std::invalid_argument("concat_rows: column mismatch");
    }
    rows += value(p).rows();
    any_grad = any_grad || needs_grad(p);
  }
  Mat out(rows, cols);
  Eigen::Index at = 0;
  for (Var p : parts) {
    out.middleRows(at, value(p).rows()) = value(p);
    at += value(p).rows();
  }
  Var o = push(std::move(out), any_grad);
  if (!nodes_[o.id].needs_grad) return o;
  nodes_[o.id].backfn = [parts, o](Tape& t) {
    const Mat& g = t.grad(o);
    Eigen::Index at = 0;
    for (Var p : parts) {
      const Eigen::Index n = t.value(p).rows();
      if (t.needs_grad(p)) t.grad_ref(p) += g.middleRows(at, n);
      at += n;
    }
  };
  return o;
}

Var Tape::concat_cols(const std::vector<Var>& parts) {
  if (parts.empty()) throw std::invalid_argument("concat_cols: empty");
  Eigen::Index cols = 0;
  const Eigen::Index rows = value(parts.front()).rows();
  bool any_grad = false;
  for (Var p : parts) {
    if (value(p).rows() != rows) {
      throw std::invalid_argument("concat_cols: row mismatch");
    }
    cols += value(p).cols();
    any_grad = any_grad || needs_grad(p);
  }
  Mat out(rows, cols);
  Eigen::Index at = 0;
  for (Var p : parts) {
    out.middleCols(at, value(p).cols()) = value(p);
    at += value(p).cols();
  }
  Var o = push(std::move(out), any_grad);
  if (!nodes_[o.id].needs_grad) return o;
  nodes_[o.id].backfn = [parts, o](Tape& t) {
    const Mat& g = t.grad(o);
    Eigen::Index at = 0;
    for (Var p : parts) {
      const Eigen::Index n = t.value(p).cols();
      if (t.needs_grad(p)) t.grad_ref(p) += g.middleCols(at, n);
      at += n;
    }
  };
  return o;
}

Var Tape::gather_rows(Var table, std::vector<int> ids) {
  const Mat& tab = value(table);
  Mat out(static_cast<Eigen::Index>(ids.size()), tab.cols());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0 || ids[i] >= tab.rows()) {
      throw std::invalid_argument("gather_rows: id out of range");
    }
    out.row(static_cast<Eigen::Index>(i)) = tab.row(ids[i]);
  }
  Var o = push(std::move(out), needs_grad(table));
  if (!nodes_[o.id].needs_grad) return o;
  nodes_[o.id].backfn = [table, o, ids = std::move(ids)](Tape& t) {
    const Mat& g = t.grad(o);
    Mat& gt = t.grad_ref(table);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      gt.row(ids[i]) += g.row(static_cast<Eigen::Index>(i));
    }
  };
  return o;
}

Var Tape::masked_cross_entropy(Var logits, std::vector<int> targets,
                               std::vector<unsigned char> mask) {
  const Mat& z = value(logits);
  const auto rows = static_cast<std::size_t>(z.rows());
  if (targets.size() != rows || mask.size() != rows) {
    throw std::invalid_argument("masked_cross_entropy: targets/mask length mismatch");
  }
  long active = 0;
  for (unsigned char m : mask) active += (m != 0);
  if (active == 0) {
    throw std::invalid_argument("masked_cross_entropy: mask selects no positions");
  }
  double total = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    if (!mask[r]) continue;
    const int y = targets[r];
    if (y < 0 || y >= z.cols()) {
      throw std::invalid_argument("masked_cross_entropy: target id out of range");
    }
    const auto row = z.row(static_cast<Eigen::Index>(r));
    const double mx = row.maxCoeff();
    const double lse = mx + std::log((row.array() - mx).exp().sum());
    total += lse - row(y);
  }
  Mat out(1, 1);
  out(0, 0) = total / static_cast<double>(active);
  Var o = push(std::move(out), needs_grad(logits));
  if (!nodes_[o.id].needs_grad) return o;
  nodes_[o.id].backfn = [logits, o, targets = std::move(targets), mask = std::move(mask),
                         active](Tape& t) {
    const double upstream = t.grad(o)(0, 0);
    const Mat& z = t.value(logits);
    Mat& gz = t.grad_ref(logits);
    const double scale = upstream / static_cast<double>(active);
    for (Eigen::Index r = 0; r < z.rows(); ++r) {
      if (!mask[static_cast<std::size_t>(r)]) continue;
      const double mx = z.row(r).maxCoeff();
      RowVec p = (z.row(r).array() - mx).exp();
      p /= p.sum();
      p(targets[static_cast<std::size_t>(r)]) -= 1.0;
      gz.row(r) += scale * p;
    }
  };
  return o;
}

void Tape::backward(Var root, double seed) {
  Node& r = nodes_[root.id];
  if (r.value.rows() != 1 || r.value.cols() != 1) {
    throw std::invalid_argument("backward: root must be a scalar (1 x 1)");
  }
  if (!r.needs_grad) return;
  r.grad(0, 0) += seed;
  for (int i = root.id; i >= 0; --i) {
    Node& node = nodes_[static_cast<std::size_t>(i)];
    if (!node.needs_grad) continue;
    if (node.backfn) node.backfn(*this);
    if (node.source != nullptr) node.source->grad += node.grad;
  }
}

}  // namespace sivr
