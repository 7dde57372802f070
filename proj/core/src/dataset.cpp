#include "sivr/dataset.hpp"

#include "sivr/errors.hpp"
#include "sivr/hash.hpp"
#include "sivr/png_io.hpp"
#include "sivr/rng.hpp"
#include "sivr/scene.hpp"
#include "sivr/text_normalize.hpp"

#include <nlohmann/json.hpp>

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace sivr {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, value);
  return std::string(buf);
}

std::string file_hash_hex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return hex64(fnv1a(ss.str()));
}

std::uint64_t DatasetManifest::audio_seed() const {
  return mix_seed(master_seed, 0xa0d10ULL);
}

namespace {

std::string sample_name(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "s%06d", index);
  return std::string(buf);
}

json manifest_to_json(const DatasetManifest& m) {
  json j;
  j["master_seed"] = m.master_seed;
  j["generator_version"] = m.generator_version;
  j["n_samples"] = m.n_samples;
  j["d_audio"] = m.d_audio;
  j["frames_per_char"] = m.frames_per_char;
  j["canvas"] = {m.canvas_width, m.canvas_height};
  j["shapes_min"] = m.shapes_min;
  j["shapes_max"] = m.shapes_max;
  return j;
}

DatasetManifest manifest_from_json(const json& j) {
  DatasetManifest m;
  m.master_seed = j.at("master_seed").get<std::uint64_t>();
  m.generator_version = j.at("generator_version").get<int>();
  m.n_samples = j.at("n_samples").get<int>();
  m.d_audio = j.at("d_audio").get<int>();
  m.frames_per_char = j.at("frames_per_char").get<int>();
  m.canvas_width = j.at("canvas")[0].get<int>();
  m.canvas_height = j.at("canvas")[1].get<int>();
  m.shapes_min = j.at("shapes_min").get<int>();
  m.shapes_max = j.at("shapes_max").get<int>();
  return m;
}

}  // namespace

Dataset generate_dataset(const GenOptions& options) {
  if (options.n < 1) throw std::invalid_argument("generate_dataset: n must be >= 1");
  if (options.shapes_min < 2 || options.shapes_max > 6 ||
      options.shapes_min > options.shapes_max) {
    throw std::invalid_argument("generate_dataset: shape count range must lie in [2, 6]");
  }

  Dataset ds;
  ds.manifest.master_seed = options.seed;
  ds.manifest.n_samples = options.n;
  ds.manifest.d_audio = options.d_audio;
  ds.manifest.frames_per_char = options.frames_per_char;
  ds.manifest.canvas_width = options.canvas_width;
  ds.manifest.canvas_height = options.canvas_height;
  ds.manifest.shapes_min = options.shapes_min;
  ds.manifest.shapes_max = options.shapes_max;

  const std::uint64_t audio_seed = ds.manifest.audio_seed();
  for (int i = 0; i < options.n; ++i) {
    const std::uint64_t sample_seed = mix_seed(options.seed, 1000 + static_cast<std::uint64_t>(i));
    Rng rng(sample_seed);
    const int n_shapes = options.shapes_min + rng.index(options.shapes_max - options.shapes_min + 1);

    Sample s;
    s.id = sample_name(i);
    s.instruction_type = kAllInstructionTypes[i % 3];
    const SceneSpec scene =
        synth_scene(sample_seed, n_shapes, options.canvas_width, options.canvas_height);
    s.image = render_scene(scene);
    const InstructionPair pair = make_instruction(scene, s.instruction_type, sample_seed);
    s.instruction_text = normalize_text(pair.instruction).text;
    s.response_text = pair.response;
    s.bbox = scene.target_shape().bbox;
    s.audio_features = synth_audio_features(s.instruction_text, options.d_audio, audio_seed,
                                            options.frames_per_char);
    s.image_path = "images/" + s.id + ".png";
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

void write_dataset(const Dataset& dataset, const std::string& dir) {
  fs::create_directories(fs::path(dir) / "images");

  {
    std::ofstream out(fs::path(dir) / "manifest.json");
    if (!out) throw DataError("cannot write manifest under " + dir);
    out << manifest_to_json(dataset.manifest).dump(2) << "\n";
  }

  std::ofstream records(fs::path(dir) / "samples.jsonl");
  if (!records) throw DataError("cannot write samples.jsonl under " + dir);
  for (const Sample& s : dataset.samples) {
    const std::string image_rel = s.image_path.empty() ? "images/" + s.id + ".png" : s.image_path;
    write_png(s.image, (fs::path(dir) / image_rel).string());
    json j;
    j["id"] = s.id;
    j["image"] = image_rel;
    j["image_size"] = {s.image.width, s.image.height};
    j["instruction_type"] = to_string(s.instruction_type);
    j["instruction"] = s.instruction_text;
    j["response"] = s.response_text;
    if (s.bbox.has_value()) {
      j["bbox"] = {s.bbox->x1, s.bbox->y1, s.bbox->x2, s.bbox->y2};
    } else {
      j["bbox"] = nullptr;
    }
    records << j.dump() << "\n";
  }
}

Dataset read_dataset(const std::string& dir) {
  const fs::path root(dir);
  std::ifstream manifest_in(root / "manifest.json");
  if (!manifest_in) throw DataError("no manifest.json under " + dir);
  Dataset ds;
  try {
    ds.manifest = manifest_from_json(json::parse(manifest_in));
  } catch (const json::exception& e) {
    throw DataError("malformed manifest.json under " + dir + ": " + e.what());
  }

  std::ifstream records(root / "samples.jsonl");
  if (!records) throw DataError("no samples.jsonl under " + dir);
  const std::uint64_t audio_seed = ds.manifest.audio_seed();
  std::string line;
  int line_no = 0;
  while (std::getline(records, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception&) {
      throw DataError("samples.jsonl line " + std::to_string(line_no) + ": malformed record");
    }
    Sample s;
    try {
      s.id = j.at("id").get<std::string>();
      s.image_path = j.at("image").get<std::string>();
      s.instruction_type = instruction_type_from_string(j.at("instruction_type").get<std::string>());
      s.instruction_text = j.at("instruction").get<std::string>();
      s.response_text = j.at("response").get<std::string>();
      if (!j.at("bbox").is_null()) {
        const auto& b = j.at("bbox");
        s.bbox = BBox{b[0].get<int>(), b[1].get<int>(), b[2].get<int>(), b[3].get<int>()};
      }
    } catch (const json::exception&) {
      throw DataError("samples.jsonl line " + std::to_string(line_no) + ": missing field");
    } catch (const std::invalid_argument& e) {
      throw DataError("samples.jsonl line " + std::to_string(line_no) + ": " + e.what());
    }
    const fs::path image_abs = root / s.image_path;
    if (!fs::exists(image_abs)) {
      throw DataError("sample " + s.id + ": missing image sidecar " + s.image_path);
    }
    s.image = read_png(image_abs.string());
    const auto size = j.at("image_size");
    if (size[0].get<int>() != s.image.width || size[1].get<int>() != s.image.height) {
      throw DataError("sample " + s.id + ": image size does not match record");
    }
    s.audio_features = synth_audio_features(s.instruction_text, ds.manifest.d_audio, audio_seed,
                                            ds.manifest.frames_per_char);
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

void validate_dataset(const Dataset& dataset) {
  for (const Sample& s : dataset.samples) {
    if (s.image.width < 1 || s.image.height < 1) {
      throw DataError("sample " + s.id + ": empty image");
    }
    if (s.bbox.has_value()) {
      const BBox& b = *s.bbox;
      if (!b.valid() || b.x2 > s.image.width || b.y2 > s.image.height) {
        throw DataError("sample " + s.id + ": box outside image bounds");
      }
      if (s.response_text.find(format_bbox(b)) == std::string::npos) {
        throw DataError("sample " + s.id + ": response does not embed its box");
      }
    }
    const auto expected_frames =
        std::min<Eigen::Index>(static_cast<Eigen::Index>(s.instruction_text.size()) *
                                   dataset.manifest.frames_per_char,
                               kMaxAudioFrames);
    if (s.audio_features.rows() != expected_frames ||
        s.audio_features.cols() != dataset.manifest.d_audio) {
      throw DataError("sample " + s.id + ": audio feature shape violates the length law");
    }
  }
}

Dataset filter_by_type(const Dataset& dataset, InstructionType type) {
  Dataset out;
  out.manifest = dataset.manifest;
  for (const Sample& s : dataset.samples) {
    if (s.instruction_type == type) out.samples.push_back(s);
  }
  out.manifest.n_samples = static_cast<int>(out.samples.size());
  return out;
}

std::string dataset_manifest_hash(const std::string& dir) {
  return file_hash_hex((fs::path(dir) / "manifest.json").string());
}

}  // namespace sivr
