#pragma once

// CSV bundles for data streams: one CSV per epoch (x_1..x_p, y), a truth
// table when the parameters are known, and a JSON manifest.

#include "irs/simgen.hpp"

#include <filesystem>

namespace irs {

/// Writes epoch_001.csv, epoch_002.csv, ..., truth.csv (when truth is
/// present) and manifest.json into dir, creating it if needed. Values are
/// written in shortest round-trip form so a read returns identical doubles.
void write_stream_bundle(const DataStream& stream, const std::filesystem::path& dir);

/// Reads a bundle written by write_stream_bundle(). Throws DataError on a
/// missing manifest, missing files, ragged rows or unparseable numbers.
DataStream read_stream_bundle(const std::filesystem::path& dir);

/// Column names used for a stream: stream.columns or x_1..x_p.
std::vector<std::string> predictor_names(const DataStream& stream);

}  // namespace irs
