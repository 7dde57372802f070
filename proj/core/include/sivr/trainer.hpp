#pragma once

#include "sivr/dataset.hpp"
#include "sivr/model.hpp"
#include "sivr/schedule.hpp"

#include <string>
#include <vector>

namespace sivr {

struct StepRecord {
  long step = 0;
  double lr = 0.0;
  double loss = 0.0;
};

struct TrainResult {
  std::vector<StepRecord> log;
  double final_loss = 0.0;
};

/// Speech-to-text alignment: audio-only prefix, instruction text as target.
/// Trains audio encoder, audio adapter, and LM; the visual path is untouched.
TrainResult train_stage1(const Dataset& dataset, ModelBundle& bundle, const TrainConfig& cfg);

/// Response training on top of a stage-1 bundle (or with
/// cfg.allow_unaligned_stage2). Prefix is visual plus the instruction in
/// cfg.modality; target is the reference response.
TrainResult train_stage2(const Dataset& dataset, ModelBundle& bundle, const TrainConfig& cfg);

/// Stage-2 objective from scratch, no alignment prerequisite.
TrainResult train_end_to_end(const Dataset& dataset, ModelBundle& bundle, const TrainConfig& cfg);

/// One line per step: step,lr,loss (full precision).
void write_train_log_csv(const TrainResult& result, const std::string& path);

}  // namespace sivr
