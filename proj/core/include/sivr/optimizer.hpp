#pragma once

#include "sivr/autograd.hpp"

#include <vector>

namespace sivr {

struct AdamWConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.05;
  double clip_norm = 1.0;  // <= 0 disables clipping
};

double global_grad_norm(const std::vector<Parameter*>& params);

/// AdamW with decoupled weight decay. Moments live on the parameters so a
/// checkpoint restores the exact optimizer state. With zero gradients a step
/// multiplies each parameter by exactly (1 - lr * weight_decay).
class AdamW {
 public:
  explicit AdamW(const AdamWConfig& cfg) : cfg_(cfg) {}

  /// t is the 1-based update count (for bias correction). Clips the global
  /// gradient norm first when clip_norm > 0.
  void step(const std::vector<Parameter*>& params, double lr, long t) const;

 private:
  AdamWConfig cfg_;
};

}  // namespace sivr
