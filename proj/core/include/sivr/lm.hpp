#pragma once

#include "sivr/nn.hpp"
#include "sivr/vocab.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sivr {

/// Concatenates modality embeddings into one prefix, order
/// [visual; audio; text]. Empty slots are skipped; all present slots must
/// share their width, and at least one of audio/text must be present (the
/// instruction has to arrive through some modality).
Var fuse(Tape& t, std::optional<Var> visual, std::optional<Var> audio,
         std::optional<Var> text);

/// Value-level variant for inference paths that already left the tape.
Mat fuse_values(const std::optional<Mat>& visual, const std::optional<Mat>& audio,
                const std::optional<Mat>& text);

/// Mean cross-entropy over response positions. mask[i] == 1 marks supervised
/// positions; at least one must be set.
Var masked_loss(Tape& t, Var logits, const std::vector<int>& target_ids,
                const std::vector<unsigned char>& response_mask);

struct LMConfig {
  int d_model = 256;
  int n_layers = 4;
  int n_heads = 4;
  int max_sequence = 1024;
  int vocab_size = 0;  // filled from the vocabulary
};

/// Toy causal decoder over [continuous prefix ; BOS ; target tokens].
/// Learned token and position embeddings, pre-norm blocks, untied head.
struct DecoderLM {
  LMConfig cfg;
  Parameter tok_embed;  // vocab x d_model
  Parameter pos_embed;  // max_sequence x d_model
  std::vector<TransformerBlock> blocks;
  LayerNorm ln_f;
  Linear head;

  DecoderLM() = default;
  DecoderLM(const LMConfig& cfg, Rng& rng);

  /// Embeds token ids (no positions; forward adds positions over the whole
  /// fused sequence).
  Var embed_tokens(Tape& t, const std::vector<int>& ids) const;

  /// Logits at each target position. prefix may be empty (0 rows, then the
  /// sequence is just BOS + targets). Throws std::invalid_argument when the
  /// total length exceeds max_sequence or widths mismatch.
  Var forward(Tape& t, std::optional<Var> prefix, const std::vector<int>& target_ids) const;

  /// Greedy decode from BOS until EOS or max_new tokens; deterministic
  /// (ties resolve to the lowest id).
  std::string generate(const Mat& prefix, int max_new, const Vocabulary& vocab) const;

  void collect(std::vector<Parameter*>& out);
};

}  // namespace sivr
