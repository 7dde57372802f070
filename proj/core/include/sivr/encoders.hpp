#pragma once

#include "sivr/image.hpp"
#include "sivr/nn.hpp"

namespace sivr {

inline constexpr int kEncoderInputSide = 224;

/// Trainable audio encoder: one same-padded 1-D convolution plus sinusoidal
/// positions, then a small transformer stack. Length preserving, width
/// d_audio in and out.
struct AudioEncoder {
  int d_audio = 768;
  Conv1d conv;
  std::vector<TransformerBlock> blocks;

  AudioEncoder() = default;
  AudioEncoder(int d_audio, int n_blocks, int n_heads, Rng& rng);

  /// features: L x d_audio, 1 <= L <= kMaxAudioFrames.
  Var apply(Tape& t, const Mat& features) const;
  void collect(std::vector<Parameter*>& out);
};

/// Trainable visual encoder: bilinear resize to 224 x 224, non-overlapping
/// patch embedding, learned patch positions, then a transformer stack.
/// Output: (224/patch)^2 tokens of width d_visual.
struct VisualEncoder {
  int d_visual = 768;
  int patch = 32;
  Linear patch_embed;
  Parameter pos;  // n_patches x d_visual
  std::vector<TransformerBlock> blocks;

  VisualEncoder() = default;
  VisualEncoder(int d_visual, int patch, int n_blocks, int n_heads, Rng& rng);

  int n_patches() const {
    const int per_side = kEncoderInputSide / patch;
    return per_side * per_side;
  }

  /// Any H, W >= 8; three channels with values in [0, 1].
  Var apply(Tape& t, const ImageTensor& image) const;

  /// Patch embedding stage only (before positions and blocks); used by the
  /// symmetry tests.
  Var embed_patches(Tape& t, const ImageTensor& image) const;

  void collect(std::vector<Parameter*>& out);
};

}  // namespace sivr
