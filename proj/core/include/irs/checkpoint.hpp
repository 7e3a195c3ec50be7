#pragma once

// Model-state checkpoints as JSON: {"theta": [...], "sigma": [row-major],
// "w2": ..., "t": ...}.

#include "irs/model.hpp"

#include <filesystem>
#include <string>

namespace irs {

std::string checkpoint_to_json(const ModelState& state);
/// Throws DataError on malformed JSON, a sigma of the wrong size, or an
/// invalid state.
ModelState checkpoint_from_json(const std::string& text);

void save_checkpoint(const ModelState& state, const std::filesystem::path& path);
ModelState load_checkpoint(const std::filesystem::path& path);

}  // namespace irs
