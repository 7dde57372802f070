#include "sivr/lm.hpp"

#include <stdexcept>

namespace sivr {

Var fuse(Tape& t, std::optional<Var> visual, std::optional<Var> audio,
         std::optional<Var> text) {
  if (!audio.has_value() && !text.has_value()) {
    throw std::invalid_argument("fuse: instruction missing, need audio or text tokens");
  }
  std::vector<Var> parts;
  if (visual.has_value()) parts.push_back(*visual);
  if (audio.has_value()) parts.push_back(*audio);
  if (text.has_value()) parts.push_back(*text);
  Eigen::Index width = t.value(parts.front()).cols();
  for (Var p : parts) {
    if (t.value(p).cols() != width) {
      throw std::invalid_argument("fuse: token width mismatch across modalities");
    }
  }
  if (parts.size() == 1) return parts.front();
  return t.concat_rows(parts);
}

Mat fuse_values(const std::optional<Mat>& visual, const std::optional<Mat>& audio,
                const std::optional<Mat>& text) {
  if (!audio.has_value() && !text.has_value()) {
    throw std::invalid_argument("fuse: instruction missing, need audio or text tokens");
  }
  std::vector<const Mat*> parts;
  if (visual.has_value()) parts.push_back(&*visual);
  if (audio.has_value()) parts.push_back(&*audio);
  if (text.has_value()) parts.push_back(&*text);
  Eigen::Index rows = 0;
  const Eigen::Index width = parts.front()->cols();
  for (const Mat* p : parts) {
    if (p->cols() != width) {
      throw std::invalid_argument("fuse: token width mismatch across modalities");
    }
    rows += p->rows();
  }
  Mat out(rows, width);
  Eigen::Index at = 0;
  for (const Mat* p : parts) {
    out.middleRows(at, p->rows()) = *p;
    at += p->rows();
  }
  return out;
}

Var masked_loss(Tape& t, Var logits, const std::vector<int>& target_ids,
                const std::vector<unsigned char>& response_mask) {
  if (static_cast<std::size_t>(t.value(logits).rows()) != target_ids.size()) {
    throw std::invalid_argument("masked_loss: logits rows must equal target count");
  }
  return t.masked_cross_entropy(logits, target_ids, response_mask);
}

DecoderLM::DecoderLM(const LMConfig& cfg_, Rng& rng)
    : cfg(cfg_),
      tok_embed("lm.tok_embed", cfg_.vocab_size, cfg_.d_model),
      pos_embed("lm.pos_embed", cfg_.max_sequence, cfg_.d_model),
      ln_f("lm.ln_f", cfg_.d_model),
      head("lm.head", cfg_.d_model, cfg_.vocab_size, rng) {
  if (cfg_.d_model % cfg_.n_heads != 0) {
    throw std::invalid_argument("lm: d_model must be divisible by n_heads");
  }
  if (cfg_.vocab_size <= 0) throw std::invalid_argument("lm: vocab_size not set");
  init_normal(tok_embed, rng, 0.02);
  init_normal(pos_embed, rng, 0.02);
  blocks.reserve(static_cast<std::size_t>(cfg_.n_layers));
  for (int i = 0; i < cfg_.n_layers; ++i) {
    blocks.emplace_back("lm.block" + std::to_string(i), cfg_.d_model, cfg_.n_heads, rng);
  }
}

Var DecoderLM::embed_tokens(Tape& t, const std::vector<int>& ids) const {
  auto& self = const_cast<DecoderLM&>(*this);
  return t.gather_rows(t.param(self.tok_embed), ids);
}

namespace {

Var run_backbone(const DecoderLM& lm, Tape& t, std::optional<Var> prefix,
                 const std::vector<int>& input_ids) {
  auto& self = const_cast<DecoderLM&>(lm);
  const Eigen::Index prefix_len = prefix.has_value() ? t.value(*prefix).rows() : 0;
  const Eigen::Index total = prefix_len + static_cast<Eigen::Index>(input_ids.size());
  if (total > lm.cfg.max_sequence) {
    throw std::invalid_argument("lm: sequence length " + std::to_string(total) +
                                " exceeds max_sequence " + std::to_string(lm.cfg.max_sequence));
  }
  if (prefix.has_value() && t.value(*prefix).cols() != lm.cfg.d_model) {
    throw std::invalid_argument("lm: prefix width does not match d_model");
  }

  Var tokens = lm.embed_tokens(t, input_ids);
  Var x = prefix.has_value() ? t.concat_rows({*prefix, tokens}) : tokens;
  Var pos = t.slice_rows(t.param(self.pos_embed), 0, static_cast<int>(total));
  x = t.add(x, pos);
  for (const auto& block : lm.blocks) x = block.apply(t, x, /*causal=*/true);
  return lm.ln_f.apply(t, x);
}

}  // namespace

Var DecoderLM::forward(Tape& t, std::optional<Var> prefix,
                       const std::vector<int>& target_ids) const {
  if (target_ids.empty()) throw std::invalid_argument("lm: no target positions");
  const Eigen::Index prefix_len = prefix.has_value() ? t.value(*prefix).rows() : 0;

  // Input: BOS then all targets but the last; row prefix+t predicts target t.
  std::vector<int> input_ids;
  input_ids.reserve(target_ids.size());
  input_ids.push_back(Vocabulary::kBos);
  input_ids.insert(input_ids.end(), target_ids.begin(), target_ids.end() - 1);

  Var hidden = run_backbone(*this, t, prefix, input_ids);
  Var at_targets = t.slice_rows(hidden, static_cast<int>(prefix_len),
                                static_cast<int>(target_ids.size()));
  return head.apply(t, at_targets);
}

std::string DecoderLM::generate(const Mat& prefix, int max_new, const Vocabulary& vocab) const {
  std::vector<int> generated;
  for (int step = 0; step < max_new; ++step) {
    // Stop (rather than fail) when the context window is exhausted.
    if (prefix.rows() + 1 + static_cast<Eigen::Index>(generated.size()) >= cfg.max_sequence) {
      break;
    }
    Tape t;
    std::optional<Var> p;
    if (prefix.rows() > 0) p = t.constant(prefix);
    std::vector<int> input_ids;
    input_ids.reserve(generated.size() + 1);
    input_ids.push_back(Vocabulary::kBos);
    input_ids.insert(input_ids.end(), generated.begin(), generated.end());

    Var hidden = run_backbone(*this, t, p, input_ids);
    const int last = static_cast<int>(t.value(hidden).rows()) - 1;
    Var logits = head.apply(t, t.slice_rows(hidden, last, 1));
    const Mat& row = t.value(logits);
    int best = 0;
    for (Eigen::Index v = 1; v < row.cols(); ++v) {
      if (row(0, v) > row(0, best)) best = static_cast<int>(v);
    }
    if (best == Vocabulary::kEos) break;
    generated.push_back(best);
  }
  return vocab.decode(generated);
}

void DecoderLM::collect(std::vector<Parameter*>& out) {
  out.push_back(&tok_embed);
  out.push_back(&pos_embed);
  for (auto& b : blocks) b.collect(out);
  ln_f.collect(out);
  head.collect(out);
}

}  // namespace sivr
