#pragma once

#include "sivr/autograd.hpp"

#include <cstdint>
#include <string>

namespace sivr {

inline constexpr int kMaxAudioFrames = 1500;
inline constexpr int kDefaultFramesPerChar = 3;

/// Deterministic pseudo-speech: each character maps to a fixed seeded
/// embedding vector repeated frames_per_char times, truncated at
/// kMaxAudioFrames. Frame count = min(frames_per_char * len(text), 1500).
/// Distinct texts give distinct sequences. Throws std::invalid_argument on
/// empty text, d_audio < 8, or frames_per_char < 1.
Mat synth_audio_features(const std::string& text, int d_audio, std::uint64_t seed,
                         int frames_per_char = kDefaultFramesPerChar);

}  // namespace sivr
