#pragma once

#include <Eigen/Core>

#include <functional>
#include <string>
#include <vector>

namespace sivr {

/// Row-major convention throughout the model code: rows are sequence
/// positions (frames, patches, tokens), columns are feature dimensions.
using Mat = Eigen::MatrixXd;
using RowVec = Eigen::RowVectorXd;

/// A trainable tensor. `grad` accumulates across a batch and is cleared by
/// the optimizer; `m`/`v` are AdamW moments and live here so a checkpoint
/// can restore the exact optimizer state.
struct Parameter {
  std::string name;
  Mat value;
  Mat grad;
  Mat m;
  Mat v;

  Parameter() = default;
  Parameter(std::string name_, int rows, int cols)
      : name(std::move(name_)),
        value(Mat::Zero(rows, cols)),
        grad(Mat::Zero(rows, cols)) {}

  void zero_grad() { grad.setZero(); }
  Eigen::Index size() const { return value.size(); }
};

/// Handle into a Tape node.
struct Var {
  int id = -1;
  bool valid() const { return id >= 0; }
};

/// Reverse-mode tape over matrices. A fresh Tape is built per forward pass;
/// parameters persist outside it and receive accumulated gradients on
/// backward(). All math is double precision.
class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // Leaves.
  Var constant(Mat value);
  Var param(Parameter& p);

  // Elementwise and broadcast arithmetic.
  Var add(Var a, Var b);
  Var add_rowvec(Var a, Var row);          // row is 1 x n, broadcast over rows
  Var add_inplace_const(Var a, const Mat& c);
  Var scale(Var a, double s);
  Var gelu(Var a);                          // exact erf-based form

  // Row-wise normalization.
  Var layernorm_rows(Var a, double eps = 1e-5);
  Var rowwise_affine(Var a, Var gain, Var bias);  // gain, bias are 1 x n
  Var softmax_rows(Var a);  // rows must contain at least one finite entry

  // Linear algebra.
  Var matmul(Var a, Var b);     // (m x k) * (k x n)
  Var matmul_nt(Var a, Var b);  // (m x k) * (n x k)^T -> m x n

  // Structure.
  Var slice_rows(Var a, int begin, int count);
  Var slice_cols(Var a, int begin, int count);
  Var concat_rows(const std::vector<Var>& parts);
  Var concat_cols(const std::vector<Var>& parts);
  Var gather_rows(Var table, std::vector<int> ids);

  /// Mean cross-entropy over positions with mask == 1. logits: T x V,
  /// targets/mask: length T, at least one mask entry set. Returns 1 x 1.
  Var masked_cross_entropy(Var logits, std::vector<int> targets,
                           std::vector<unsigned char> mask);

  /// Seeds d(root)/d(root) = seed and propagates to all parameters reached
  /// by the graph. root must be 1 x 1.
  void backward(Var root, double seed = 1.0);

  const Mat& value(Var v) const { return nodes_[v.id].value; }
  const Mat& grad(Var v) const { return nodes_[v.id].grad; }
  bool needs_grad(Var v) const { return nodes_[v.id].needs_grad; }
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Mat value;
    Mat grad;                            // allocated only when needs_grad
    bool needs_grad = false;
    Parameter* source = nullptr;         // set on parameter leaves
    std::function<void(Tape&)> backfn;   // pushes this node's grad to parents
  };

  Var push(Mat value, bool needs_grad);
  Mat& grad_ref(Var v) { return nodes_[v.id].grad; }

  std::vector<Node> nodes_;
};

}  // namespace sivr
