#include "sivr/encoders.hpp"

#include "sivr/audio_synth.hpp"

#include <stdexcept>

namespace sivr {

AudioEncoder::AudioEncoder(int d_audio_, int n_blocks, int n_heads, Rng& rng)
    : d_audio(d_audio_), conv("audio_enc.conv", d_audio_, d_audio_, 3, rng) {
  blocks.reserve(static_cast<std::size_t>(n_blocks));
  for (int i = 0; i < n_blocks; ++i) {
    blocks.emplace_back("audio_enc.block" + std::to_string(i), d_audio_, n_heads, rng);
  }
}

Var AudioEncoder::apply(Tape& t, const Mat& features) const {
  if (features.cols() != d_audio) {
    throw std::invalid_argument("audio encoder: feature width " +
                                std::to_string(features.cols()) + " does not match d_audio " +
                                std::to_string(d_audio));
  }
  if (features.rows() < 1 || features.rows() > kMaxAudioFrames) {
    throw std::invalid_argument("audio encoder: frame count out of [1, 1500]");
  }
  Var x = conv.apply(t, t.constant(features));
  x = t.add_inplace_const(x, sinusoidal_positions(static_cast<int>(features.rows()), d_audio));
  for (const auto& block : blocks) x = block.apply(t, x, /*causal=*/false);
  return x;
}

void AudioEncoder::collect(std::vector<Parameter*>& out) {
  conv.collect(out);
  for (auto& b : blocks) b.collect(out);
}

VisualEncoder::VisualEncoder(int d_visual_, int patch_, int n_blocks, int n_heads, Rng& rng)
    : d_visual(d_visual_), patch(patch_) {
  if (patch <= 0 || kEncoderInputSide % patch != 0) {
    throw std::invalid_argument("visual encoder: patch must divide 224");
  }
  patch_embed = Linear("visual_enc.patch_embed", patch * patch * 3, d_visual_, rng);
  pos = Parameter("visual_enc.pos", n_patches(), d_visual_);
  init_normal(pos, rng, 0.02);
  blocks.reserve(static_cast<std::size_t>(n_blocks));
  for (int i = 0; i < n_blocks; ++i) {
    blocks.emplace_back("visual_enc.block" + std::to_string(i), d_visual_, n_heads, rng);
  }
}

Var VisualEncoder::embed_patches(Tape& t, const ImageTensor& image) const {
  if (image.width < 8 || image.height < 8) {
    throw std::invalid_argument("visual encoder: image must be at least 8 x 8");
  }
  if (image.data.size() != static_cast<std::size_t>(image.width) * image.height * 3) {
    throw std::invalid_argument("visual encoder: expected 3-channel image data");
  }
  const ImageTensor resized = resize_bilinear(image, kEncoderInputSide, kEncoderInputSide);
  return patch_embed.apply(t, t.constant(to_patches(resized, patch)));
}

Var VisualEncoder::apply(Tape& t, const ImageTensor& image) const {
  auto& self = const_cast<VisualEncoder&>(*this);
  Var x = t.add(embed_patches(t, image), t.param(self.pos));
  for (const auto& block : blocks) x = block.apply(t, x, /*causal=*/false);
  return x;
}

void VisualEncoder::collect(std::vector<Parameter*>& out) {
  patch_embed.collect(out);
  out.push_back(&pos);
  for (auto& b : blocks) b.collect(out);
}

}  // namespace sivr
