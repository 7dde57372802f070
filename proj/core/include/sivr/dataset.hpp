#pragma once

#include "sivr/audio_synth.hpp"
#include "sivr/image.hpp"
#include "sivr/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sivr {

/// One multimodal training example. Audio features are derived from the
/// instruction text and the dataset seed; they are regenerated on read, never
/// stored.
struct Sample {
  std::string id;
  Rgb8Image image;
  std::string image_path;  // relative to the dataset directory once stored
  std::string instruction_text;
  InstructionType instruction_type = InstructionType::conversation;
  std::string response_text;
  std::optional<BBox> bbox;
  Mat audio_features;

  int image_width() const { return image.width; }
  int image_height() const { return image.height; }
};

struct DatasetManifest {
  std::uint64_t master_seed = 0;
  int generator_version = 1;
  int n_samples = 0;
  int d_audio = 768;
  int frames_per_char = kDefaultFramesPerChar;
  int canvas_width = 224;
  int canvas_height = 224;
  int shapes_min = 2;
  int shapes_max = 4;

  /// Stream seed shared by every sample's pseudo-speech synthesis.
  std::uint64_t audio_seed() const;
};

struct Dataset {
  DatasetManifest manifest;
  std::vector<Sample> samples;
};

struct GenOptions {
  int n = 0;
  std::uint64_t seed = 0;
  int shapes_min = 2;
  int shapes_max = 4;
  int d_audio = 768;
  int frames_per_char = kDefaultFramesPerChar;
  int canvas_width = 224;
  int canvas_height = 224;
};

/// Deterministic synthetic dataset; instruction types cycle
/// conversation -> simple -> complex so every split is balanced.
/// Throws std::invalid_argument for n < 1 or an invalid shape range.
Dataset generate_dataset(const GenOptions& options);

/// Writes manifest.json, samples.jsonl and images/<id>.png under dir,
/// creating directories as needed. Output bytes depend only on the dataset.
void write_dataset(const Dataset& dataset, const std::string& dir);

/// Reads a dataset directory back; regenerates audio features. Malformed
/// record lines report their 1-based line number; missing image sidecars
/// report the sample id. Throws DataError.
Dataset read_dataset(const std::string& dir);

/// Checks every sample invariant (box bounds, response/box consistency,
/// audio length law). Throws DataError naming the first offending sample.
void validate_dataset(const Dataset& dataset);

/// Samples of one instruction type, sharing the parent manifest.
Dataset filter_by_type(const Dataset& dataset, InstructionType type);

std::string dataset_manifest_hash(const std::string& dir);

}  // namespace sivr
