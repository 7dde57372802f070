#pragma once

#include "sivr/model.hpp"

#include <string>

namespace sivr {

/// Single-file binary container: versioned JSON header (config, stage tag,
/// step, dataset manifest hash, parameter table) followed by raw little
/// endian doubles for every parameter value and its AdamW moments. A
/// save/load round trip restores bitwise-identical forward outputs.
void save_checkpoint(ModelBundle& bundle, const std::string& path);

ModelBundle load_checkpoint(const std::string& path);

/// Loads and insists the stored model config equals `expected`; throws
/// DataError naming the first differing field otherwise.
ModelBundle load_checkpoint_expect(const std::string& path, const ModelConfig& expected);

}  // namespace sivr
