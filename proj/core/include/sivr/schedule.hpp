#pragma once

#include "sivr/model.hpp"

#include <cstdint>

namespace sivr {

enum class TrainStage { stage1, stage2, end_to_end };

std::string to_string(TrainStage stage);

struct TrainConfig {
  double init_lr = 1e-5;
  double min_lr = 1e-5;
  double warmup_lr = 1e-5;
  long warmup_steps = 1000;
  double weight_decay = 0.05;
  int epochs = 20;
  int batch_size = 4;
  std::uint64_t seed = 0;
  TrainStage stage = TrainStage::stage2;
  Modality modality = Modality::speech;  // stage-2 instruction channel
  FreezeFlags freeze;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  double clip_norm = 1.0;  // <= 0 disables clipping
  bool allow_unaligned_stage2 = false;
};

/// Linear warmup then cosine decay:
///   step <  W: warmup_lr + (init_lr - warmup_lr) * step / W
///   step >= W: min_lr + (init_lr - min_lr) / 2 * (1 + cos(pi (step-W)/(T-W)))
/// Continuous at step == W. Requires 0 <= step <= total_steps and
/// total_steps > warmup_steps; throws std::invalid_argument otherwise.
/// With the paper-default triple (init == min == warmup) this is the
/// constant 1e-5 schedule.
double lr_at(long step, long total_steps, const TrainConfig& cfg);

}  // namespace sivr
