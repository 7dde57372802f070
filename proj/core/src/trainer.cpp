#include "sivr/trainer.hpp"

#include "sivr/errors.hpp"
#include "sivr/optimizer.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace sivr {

namespace {

std::vector<int> response_targets(const Vocabulary& vocab, const std::string& text) {
  std::vector<int> ids = vocab.encode(text);
  ids.push_back(Vocabulary::kEos);
  return ids;
}

double sample_loss(ModelBundle& bundle, const Sample& sample, TrainStage stage,
                   Modality modality, double backward_seed) {
  Tape t;
  Var prefix;
  std::vector<int> targets;
  if (stage == TrainStage::stage1) {
    prefix = bundle.audio_tokens(t, sample.audio_features);
    targets = response_targets(bundle.vocab, sample.instruction_text);
  } else {
    prefix = bundle.sample_prefix(t, sample, modality);
    targets = response_targets(bundle.vocab, sample.response_text);
  }
  Var logits = bundle.lm.forward(t, prefix, targets);
  const std::vector<unsigned char> mask(targets.size(), 1);
  Var loss = masked_loss(t, logits, targets, mask);
  t.backward(loss, backward_seed);
  return t.value(loss)(0, 0);
}

TrainResult run_training(const Dataset& dataset, ModelBundle& bundle, const TrainConfig& cfg,
                         TrainStage stage) {
  if (dataset.samples.empty()) throw DataError("training dataset is empty");
  if (cfg.batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (cfg.epochs < 1) throw std::invalid_argument("epochs must be >= 1");

  if (stage == TrainStage::stage1) {
    for (const Sample& s : dataset.samples) {
      if (s.audio_features.rows() == 0) {
        throw DataError("stage 1 requires audio features on every sample (sample " + s.id + ")");
      }
    }
  }
  if (stage == TrainStage::stage2 && bundle.stage_tag != "stage1" &&
      bundle.stage_tag != "stage2" && !cfg.allow_unaligned_stage2) {
    throw DataError("stage 2 requires a stage-1 bundle (tag is '" + bundle.stage_tag +
                    "'); pass the explicit override to train anyway");
  }

  // Entering a new stage starts a fresh run: step zero, fresh moments.
  const std::string tag = to_string(stage);
  if (bundle.stage_tag != tag) {
    bundle.stage_tag = tag;
    bundle.step = 0;
    for (Parameter* p : bundle.parameters()) {
      p->m.resize(0, 0);
      p->v.resize(0, 0);
    }
  }

  FreezeFlags freeze = cfg.freeze;
  if (stage == TrainStage::stage1) {
    freeze.visual_encoder = true;
    freeze.visual_adapter = true;
  }
  const std::vector<Parameter*> trainable = bundle.trainable(freeze);
  if (trainable.empty()) throw std::invalid_argument("all components are frozen");

  const long n = static_cast<long>(dataset.samples.size());
  const long steps_per_epoch = (n + cfg.batch_size - 1) / cfg.batch_size;
  const long total_steps = steps_per_epoch * cfg.epochs;
  if (total_steps <= cfg.warmup_steps) {
    throw std::invalid_argument("total steps (" + std::to_string(total_steps) +
                                ") must exceed warmup_steps (" +
                                std::to_string(cfg.warmup_steps) + ")");
  }

  AdamWConfig acfg;
  acfg.beta1 = cfg.beta1;
  acfg.beta2 = cfg.beta2;
  acfg.eps = cfg.adam_eps;
  acfg.weight_decay = cfg.weight_decay;
  acfg.clip_norm = cfg.clip_norm;
  const AdamW optimizer(acfg);

  TrainResult result;
  const long start_step = bundle.step;  // resume point
  for (long epoch = start_step / steps_per_epoch; epoch < cfg.epochs; ++epoch) {
    // Batch order is a pure function of (seed, epoch) so a resumed run sees
    // the same batches as an uninterrupted one.
    std::vector<long> order(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    Rng shuffle_rng(mix_seed(cfg.seed, 0xe90c4ULL + static_cast<std::uint64_t>(epoch)));
    shuffle_rng.shuffle(order);

    for (long b = 0; b < steps_per_epoch; ++b) {
      const long step = epoch * steps_per_epoch + b;
      if (step < start_step) continue;

      const long lo = b * cfg.batch_size;
      const long hi = std::min(n, lo + cfg.batch_size);
      const double inv = 1.0 / static_cast<double>(hi - lo);

      for (Parameter* p : trainable) p->zero_grad();
      double batch_loss = 0.0;
      for (long i = lo; i < hi; ++i) {
        const Sample& sample = dataset.samples[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
        batch_loss += inv * sample_loss(bundle, sample, stage, cfg.modality, inv);
      }
      if (!std::isfinite(batch_loss)) {
        throw NumericError("non-finite loss at step " + std::to_string(step));
      }

      const double lr = lr_at(step, total_steps, cfg);
      optimizer.step(trainable, lr, bundle.step + 1);
      bundle.step += 1;
      result.log.push_back(StepRecord{step, lr, batch_loss});
      result.final_loss = batch_loss;
    }
  }
  return result;
}

}  // namespace

TrainResult train_stage1(const Dataset& dataset, ModelBundle& bundle, const TrainConfig& cfg) {
  return run_training(dataset, bundle, cfg, TrainStage::stage1);
}

TrainResult train_stage2(const Dataset& dataset, ModelBundle& bundle, const TrainConfig& cfg) {
  return run_training(dataset, bundle, cfg, TrainStage::stage2);
}

TrainResult train_end_to_end(const Dataset& dataset, ModelBundle& bundle,
                             const TrainConfig& cfg) {
  return run_training(dataset, bundle, cfg, TrainStage::end_to_end);
}

void write_train_log_csv(const TrainResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write training log: " + path);
  out.precision(17);
  out << "step,lr,loss\n";
  for (const StepRecord& r : result.log) {
    out << r.step << "," << r.lr << "," << r.loss << "\n";
  }
}

}  // namespace sivr
