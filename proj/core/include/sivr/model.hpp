#pragma once

#include "sivr/adapters.hpp"
#include "sivr/dataset.hpp"
#include "sivr/encoders.hpp"
#include "sivr/lm.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sivr {

/// Which modality carries the instruction.
enum class Modality { speech, text };

std::string to_string(Modality m);
Modality modality_from_string(const std::string& name);

struct ModelConfig {
  std::string profile = "standard";
  int d_audio = 768;
  int d_visual = 768;
  int d_model = 256;
  int enc_blocks = 2;
  int enc_heads = 4;
  int patch = 32;
  int lm_layers = 4;
  int lm_heads = 4;
  int max_sequence = 1024;
  AdapterKind adapter_kind = AdapterKind::linear;
  int adapter_hidden = 0;  // 0 resolves to 2 * d_audio
  int adapter_blocks = 1;
  int adapter_heads = 4;
  int visual_adapter_hidden = 0;  // 0 resolves to 2 * d_visual

  /// "standard" keeps the 768-wide encoder interfaces; "tiny" is the fast
  /// 64-wide test profile; "micro" is a minimal profile for harness runs.
  static ModelConfig named_profile(const std::string& name);

  bool operator==(const ModelConfig&) const = default;
};

/// Name of the first differing field, if any. Used to report checkpoint and
/// resume mismatches precisely.
std::optional<std::string> first_config_difference(const ModelConfig& a, const ModelConfig& b);

struct FreezeFlags {
  bool audio_encoder = false;
  bool visual_encoder = false;
  bool audio_adapter = false;
  bool visual_adapter = false;
  bool lm = false;
};

/// Every trainable component plus the configuration needed to rebuild it;
/// checkpointable as one unit.
struct ModelBundle {
  ModelConfig cfg;
  Vocabulary vocab;
  AudioEncoder audio_encoder;
  VisualEncoder visual_encoder;
  AudioAdapter audio_adapter;
  VisualAdapter visual_adapter;
  DecoderLM lm;

  std::string stage_tag = "fresh";  // fresh | stage1 | stage2 | end_to_end
  long step = 0;
  std::string dataset_hash;  // manifest hash of the data last trained on

  static ModelBundle init(const ModelConfig& cfg, std::uint64_t seed);

  std::vector<Parameter*> parameters();
  std::vector<Parameter*> trainable(const FreezeFlags& freeze);
  long parameter_count();

  // Tape-level building blocks.
  Var audio_tokens(Tape& t, const Mat& features) const;
  Var visual_tokens(Tape& t, const ImageTensor& image) const;

  /// Stage-2 style prefix for a sample: visual tokens plus the instruction
  /// in the requested modality.
  Var sample_prefix(Tape& t, const Sample& sample, Modality modality) const;

  /// Prefix as a plain matrix, for generation.
  Mat sample_prefix_value(const Sample& sample, Modality modality) const;
  Mat transcription_prefix_value(const Sample& sample) const;

  /// Greedy response for a sample.
  std::string respond(const Sample& sample, Modality modality, int max_new) const;

  /// Deterministic forward on a fixed built-in probe input; checkpoint tests
  /// compare this bitwise across save/load.
  Mat probe_logits() const;
};

}  // namespace sivr
