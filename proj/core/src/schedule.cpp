#include "sivr/schedule.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sivr {

std::string to_string(TrainStage stage) {
  switch (stage) {
    case TrainStage::stage1: return "stage1";
    case TrainStage::stage2: return "stage2";
    case TrainStage::end_to_end: return "end_to_end";
  }
  return "?";
}

double lr_at(long step, long total_steps, const TrainConfig& cfg) {
  if (cfg.warmup_steps < 0) throw std::invalid_argument("lr_at: warmup_steps must be >= 0");
  if (cfg.init_lr <= 0 || cfg.min_lr <= 0 || cfg.warmup_lr <= 0) {
    throw std::invalid_argument("lr_at: learning rates must be positive");
  }
  if (cfg.min_lr > cfg.init_lr) throw std::invalid_argument("lr_at: min_lr must be <= init_lr");
  if (step < 0 || step > total_steps) {
    throw std::invalid_argument("lr_at: step must lie in [0, total_steps]");
  }
  if (total_steps <= cfg.warmup_steps) {
    throw std::invalid_argument("lr_at: total_steps must exceed warmup_steps");
  }
  if (step < cfg.warmup_steps) {
    const double frac = static_cast<double>(step) / static_cast<double>(cfg.warmup_steps);
    return cfg.warmup_lr + (cfg.init_lr - cfg.warmup_lr) * frac;
  }
  const double progress = static_cast<double>(step - cfg.warmup_steps) /
                          static_cast<double>(total_steps - cfg.warmup_steps);
  return cfg.min_lr +
         0.5 * (cfg.init_lr - cfg.min_lr) * (1.0 + std::cos(std::numbers::pi * progress));
}

}  // namespace sivr
