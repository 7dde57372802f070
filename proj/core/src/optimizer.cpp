#include "sivr/optimizer.hpp"

#include <cmath>

namespace sivr {

double global_grad_norm(const std::vector<Parameter*>& params) {
  double sq = 0.0;
  for (const Parameter* p : params) sq += p->grad.squaredNorm();
  return std::sqrt(sq);
}

void AdamW::step(const std::vector<Parameter*>& params, double lr, long t) const {
  if (cfg_.clip_norm > 0) {
    const double norm = global_grad_norm(params);
    if (norm > cfg_.clip_norm) {
      const double scale = cfg_.clip_norm / norm;
      for (Parameter* p : params) p->grad *= scale;
    }
  }

  const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t));
  const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t));
  const double decay_factor = 1.0 - lr * cfg_.weight_decay;

  for (Parameter* p : params) {
    if (p->m.size() == 0) p->m = Mat::Zero(p->value.rows(), p->value.cols());
    if (p->v.size() == 0) p->v = Mat::Zero(p->value.rows(), p->value.cols());

    p->m = cfg_.beta1 * p->m + (1.0 - cfg_.beta1) * p->grad;
    p->v = cfg_.beta2 * p->v.array().matrix() +
           (1.0 - cfg_.beta2) * p->grad.array().square().matrix();

    if (cfg_.weight_decay != 0.0) p->value *= decay_factor;
    p->value.array() -=
        lr * (p->m.array() / bc1) / ((p->v.array() / bc2).sqrt() + cfg_.eps);
  }
}

}  // namespace sivr
