#include "sivr/model.hpp"

#include <stdexcept>

namespace sivr {

std::string to_string(Modality m) { return m == Modality::speech ? "speech" : "text"; }

Modality modality_from_string(const std::string& name) {
  if (name == "speech") return Modality::speech;
  if (name == "text") return Modality::text;
  throw std::invalid_argument("unknown modality: " + name);
}

ModelConfig ModelConfig::named_profile(const std::string& name) {
  ModelConfig cfg;
  cfg.profile = name;
  if (name == "standard") {
    return cfg;
  }
  if (name == "tiny") {
    cfg.d_audio = cfg.d_visual = cfg.d_model = 64;
    cfg.enc_blocks = 2;
    cfg.lm_layers = 2;
    cfg.max_sequence = 1024;
    return cfg;
  }
  if (name == "micro") {
    cfg.d_audio = cfg.d_visual = cfg.d_model = 32;
    cfg.enc_blocks = 1;
    cfg.enc_heads = 2;
    cfg.lm_layers = 1;
    cfg.lm_heads = 2;
    cfg.patch = 56;
    cfg.max_sequence = 640;
    cfg.adapter_heads = 2;
    return cfg;
  }
  throw std::invalid_argument("unknown profile: " + name);
}

std::optional<std::string> first_config_difference(const ModelConfig& a, const ModelConfig& b) {
  if (a.profile != b.profile) return "profile";
  if (a.d_audio != b.d_audio) return "d_audio";
  if (a.d_visual != b.d_visual) return "d_visual";
  if (a.d_model != b.d_model) return "d_model";
  if (a.enc_blocks != b.enc_blocks) return "enc_blocks";
  if (a.enc_heads != b.enc_heads) return "enc_heads";
  if (a.patch != b.patch) return "patch";
  if (a.lm_layers != b.lm_layers) return "lm_layers";
  if (a.lm_heads != b.lm_heads) return "lm_heads";
  if (a.max_sequence != b.max_sequence) return "max_sequence";
  if (a.adapter_kind != b.adapter_kind) return "adapter_kind";
  if (a.adapter_hidden != b.adapter_hidden) return "adapter_hidden";
  if (a.adapter_blocks != b.adapter_blocks) return "adapter_blocks";
  if (a.adapter_heads != b.adapter_heads) return "adapter_heads";
  if (a.visual_adapter_hidden != b.visual_adapter_hidden) return "visual_adapter_hidden";
  return std::nullopt;
}

ModelBundle ModelBundle::init(const ModelConfig& cfg, std::uint64_t seed) {
  ModelBundle b;
  b.cfg = cfg;
  Rng rng(mix_seed(seed, 0x0b1dULL));

  b.audio_encoder = AudioEncoder(cfg.d_audio, cfg.enc_blocks, cfg.enc_heads, rng);
  b.visual_encoder = VisualEncoder(cfg.d_visual, cfg.patch, cfg.enc_blocks, cfg.enc_heads, rng);

  AdapterConfig acfg;
  acfg.kind = cfg.adapter_kind;
  acfg.in_dim = cfg.d_audio;
  acfg.out_dim = cfg.d_model;
  acfg.hidden_dim = cfg.adapter_hidden;
  acfg.n_blocks = cfg.adapter_blocks;
  acfg.n_heads = cfg.adapter_heads;
  b.audio_adapter = AudioAdapter(acfg, rng);

  const int vah = cfg.visual_adapter_hidden > 0 ? cfg.visual_adapter_hidden : 2 * cfg.d_visual;
  b.visual_adapter = VisualAdapter(cfg.d_visual, vah, cfg.d_model, rng);

  LMConfig lmc;
  lmc.d_model = cfg.d_model;
  lmc.n_layers = cfg.lm_layers;
  lmc.n_heads = cfg.lm_heads;
  lmc.max_sequence = cfg.max_sequence;
  lmc.vocab_size = b.vocab.size();
  b.lm = DecoderLM(lmc, rng);
  return b;
}

std::vector<Parameter*> ModelBundle::parameters() {
  std::vector<Parameter*> out;
  audio_encoder.collect(out);
  visual_encoder.collect(out);
  audio_adapter.collect(out);
  visual_adapter.collect(out);
  lm.collect(out);
  return out;
}

std::vector<Parameter*> ModelBundle::trainable(const FreezeFlags& freeze) {
  std::vector<Parameter*> out;
  if (!freeze.audio_encoder) audio_encoder.collect(out);
  if (!freeze.visual_encoder) visual_encoder.collect(out);
  if (!freeze.audio_adapter) audio_adapter.collect(out);
  if (!freeze.visual_adapter) visual_adapter.collect(out);
  if (!freeze.lm) lm.collect(out);
  return out;
}

long ModelBundle::parameter_count() {
  long total = 0;
  for (const Parameter* p : parameters()) total += static_cast<long>(p->size());
  return total;
}

Var ModelBundle::audio_tokens(Tape& t, const Mat& features) const {
  return audio_adapter.apply(t, audio_encoder.apply(t, features));
}

Var ModelBundle::visual_tokens(Tape& t, const ImageTensor& image) const {
  return visual_adapter.apply(t, visual_encoder.apply(t, image));
}

Var ModelBundle::sample_prefix(Tape& t, const Sample& sample, Modality modality) const {
  Var visual = visual_tokens(t, to_tensor(sample.image));
  if (modality == Modality::speech) {
    return fuse(t, visual, audio_tokens(t, sample.audio_features), std::nullopt);
  }
  Var text = lm.embed_tokens(t, vocab.encode(sample.instruction_text));
  return fuse(t, visual, std::nullopt, text);
}

Mat ModelBundle::sample_prefix_value(const Sample& sample, Modality modality) const {
  Tape t;
  return t.value(sample_prefix(t, sample, modality));
}

Mat ModelBundle::transcription_prefix_value(const Sample& sample) const {
  Tape t;
  return t.value(audio_tokens(t, sample.audio_features));
}

std::string ModelBundle::respond(const Sample& sample, Modality modality, int max_new) const {
  return lm.generate(sample_prefix_value(sample, modality), max_new, vocab);
}

Mat ModelBundle::probe_logits() const {
  // Fixed synthetic inputs: a short sinusoidal "audio" clip, a gradient
  // image, and a tiny target string.
  const Mat audio = sinusoidal_positions(6, cfg.d_audio);
  ImageTensor image(32, 32);
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) {
      for (int c = 0; c < 3; ++c) image.at(x, y, c) = ((x + y + c) % 7) / 7.0;
    }
  }
  std::vector<int> targets = vocab.encode("probe ok");
  targets.push_back(Vocabulary::kEos);

  Tape t;
  Var prefix = fuse(t, visual_tokens(t, image), audio_tokens(t, audio), std::nullopt);
  Var logits = lm.forward(t, prefix, targets);
  return t.value(logits);
}

}  // namespace sivr
