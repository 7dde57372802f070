#include "sivr/audio_synth.hpp"

#include "sivr/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace sivr {

Mat synth_audio_features(const std::string& text, int d_audio, std::uint64_t seed,
                         int frames_per_char) {
  if (text.empty()) throw std::invalid_argument("synth_audio_features: empty text");
  if (d_audio < 8) throw std::invalid_argument("synth_audio_features: d_audio must be >= 8");
  if (frames_per_char < 1) {
    throw std::invalid_argument("synth_audio_features: frames_per_char must be >= 1");
  }

  const int total = static_cast<int>(text.size()) * frames_per_char;
  const int frames = std::min(total, kMaxAudioFrames);
  Mat out(frames, d_audio);
  RowVec embedding(d_audio);
  int row = 0;
  for (std::size_t i = 0; i < text.size() && row < frames; ++i) {
    // One fixed embedding per (seed, character); position plays no role, so
    // the same character always contributes the same frames.
    Rng rng(mix_seed(seed, 0xa1d10ULL + static_cast<unsigned char>(text[i])));
    for (int d = 0; d < d_audio; ++d) embedding(d) = rng.normal();
    for (int r = 0; r < frames_per_char && row < frames; ++r) {
      out.row(row++) = embedding;
    }
  }
  return out;
}

}  // namespace sivr
