#include "sivr/checkpoint.hpp"

#include "sivr/errors.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>

namespace sivr {

namespace {

using json = nlohmann::ordered_json;

constexpr char kMagic[] = "SIVRCKPT";
constexpr std::uint32_t kVersion = 1;

json config_to_json(const ModelConfig& cfg) {
  json j;
  j["profile"] = cfg.profile;
  j["d_audio"] = cfg.d_audio;
  j["d_visual"] = cfg.d_visual;
  j["d_model"] = cfg.d_model;
  j["enc_blocks"] = cfg.enc_blocks;
  j["enc_heads"] = cfg.enc_heads;
  j["patch"] = cfg.patch;
  j["lm_layers"] = cfg.lm_layers;
  j["lm_heads"] = cfg.lm_heads;
  j["max_sequence"] = cfg.max_sequence;
  j["adapter_kind"] = to_string(cfg.adapter_kind);
  j["adapter_hidden"] = cfg.adapter_hidden;
  j["adapter_blocks"] = cfg.adapter_blocks;
  j["adapter_heads"] = cfg.adapter_heads;
  j["visual_adapter_hidden"] = cfg.visual_adapter_hidden;
  return j;
}

ModelConfig config_from_json(const json& j) {
  ModelConfig cfg;
  cfg.profile = j.at("profile").get<std::string>();
  cfg.d_audio = j.at("d_audio").get<int>();
  cfg.d_visual = j.at("d_visual").get<int>();
  cfg.d_model = j.at("d_model").get<int>();
  cfg.enc_blocks = j.at("enc_blocks").get<int>();
  cfg.enc_heads = j.at("enc_heads").get<int>();
  cfg.patch = j.at("patch").get<int>();
  cfg.lm_layers = j.at("lm_layers").get<int>();
  cfg.lm_heads = j.at("lm_heads").get<int>();
  cfg.max_sequence = j.at("max_sequence").get<int>();
  cfg.adapter_kind = adapter_kind_from_string(j.at("adapter_kind").get<std::string>());
  cfg.adapter_hidden = j.at("adapter_hidden").get<int>();
  cfg.adapter_blocks = j.at("adapter_blocks").get<int>();
  cfg.adapter_heads = j.at("adapter_heads").get<int>();
  cfg.visual_adapter_hidden = j.at("visual_adapter_hidden").get<int>();
  return cfg;
}

void write_mat(std::ofstream& out, const Mat& m) {
  out.write(reinterpret_cast<const char*>(m.data()),
            static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(m.size())));
}

void read_mat(std::ifstream& in, Mat& m) {
  in.read(reinterpret_cast<char*>(m.data()),
          static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(m.size())));
}

}  // namespace

void save_checkpoint(ModelBundle& bundle, const std::string& path) {
  const std::vector<Parameter*> params = bundle.parameters();

  json header;
  header["version"] = kVersion;
  header["config"] = config_to_json(bundle.cfg);
  header["stage_tag"] = bundle.stage_tag;
  header["step"] = bundle.step;
  header["dataset_hash"] = bundle.dataset_hash;
  json table = json::array();
  for (const Parameter* p : params) {
    table.push_back({{"name", p->name}, {"rows", p->value.rows()}, {"cols", p->value.cols()}});
  }
  header["params"] = table;
  const std::string header_text = header.dump();

  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write checkpoint: " + path);
  out.write(kMagic, 8);
  const std::uint64_t len = header_text.size();
  out.write(reinterpret_cast<const char*>(&len), sizeof(len));
  out.write(header_text.data(), static_cast<std::streamsize>(len));
  for (Parameter* p : params) {
    if (p->m.size() == 0) p->m = Mat::Zero(p->value.rows(), p->value.cols());
    if (p->v.size() == 0) p->v = Mat::Zero(p->value.rows(), p->value.cols());
    write_mat(out, p->value);
    write_mat(out, p->m);
    write_mat(out, p->v);
  }
  if (!out) throw DataError("short write saving checkpoint: " + path);
}

ModelBundle load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint: " + path);

  char magic[8] = {};
  in.read(magic, 8);
  if (!in || std::string(magic, 8) != kMagic) {
    throw DataError("not a checkpoint file (bad magic): " + path);
  }
  std::uint64_t len = 0;
  in.read(reinterpret_cast<char*>(&len), sizeof(len));
  if (!in || len == 0 || len > (1ULL << 30)) {
    throw DataError("corrupt checkpoint header length: " + path);
  }
  std::string header_text(len, '\0');
  in.read(header_text.data(), static_cast<std::streamsize>(len));
  json header;
  try {
    header = json::parse(header_text);
  } catch (const json::exception& e) {
    throw DataError("corrupt checkpoint header in " + path + ": " + e.what());
  }
  const auto version = header.at("version").get<std::uint32_t>();
  if (version != kVersion) {
    throw DataError("checkpoint version " + std::to_string(version) + " unsupported (expect " +
                    std::to_string(kVersion) + "): " + path);
  }

  ModelBundle bundle = ModelBundle::init(config_from_json(header.at("config")), 0);
  bundle.stage_tag = header.at("stage_tag").get<std::string>();
  bundle.step = header.at("step").get<long>();
  bundle.dataset_hash = header.at("dataset_hash").get<std::string>();

  const std::vector<Parameter*> params = bundle.parameters();
  const json& table = header.at("params");
  if (table.size() != params.size()) {
    throw DataError("checkpoint parameter table size mismatch: " + path);
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    Parameter* p = params[i];
    const json& entry = table[i];
    if (entry.at("name").get<std::string>() != p->name ||
        entry.at("rows").get<Eigen::Index>() != p->value.rows() ||
        entry.at("cols").get<Eigen::Index>() != p->value.cols()) {
      throw DataError("checkpoint parameter mismatch at '" + p->name + "': " + path);
    }
    p->m = Mat::Zero(p->value.rows(), p->value.cols());
    p->v = Mat::Zero(p->value.rows(), p->value.cols());
    read_mat(in, p->value);
    read_mat(in, p->m);
    read_mat(in, p->v);
  }
  if (!in) throw DataError("checkpoint truncated: " + path);
  return bundle;
}

ModelBundle load_checkpoint_expect(const std::string& path, const ModelConfig& expected) {
  ModelBundle bundle = load_checkpoint(path);
  if (auto field = first_config_difference(bundle.cfg, expected)) {
    throw DataError("checkpoint config mismatch on field '" + *field + "': " + path);
  }
  return bundle;
}

}  // namespace sivr
