#include "irs/stream_io.hpp"

#include "irs/csv.hpp"
#include "irs/error.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>

namespace irs {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string epoch_file(std::size_t e) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "epoch_%03zu.csv", e + 1);
  return buf;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  return out;
}

double parse_cell(const std::string& cell, const fs::path& file, std::size_t row) {
  const auto v = parse_double(cell);
  if (!v) {
    throw DataError(file.filename().string() + ": row " + std::to_string(row + 1) +
                    ": not a number '" + cell + "'");
  }
  return *v;
}

}  // namespace

std::vector<std::string> predictor_names(const DataStream& stream) {
  if (!stream.columns.empty()) return stream.columns;
  std::vector<std::string> names;
  for (Index j = 0; j < stream.dim(); ++j) names.push_back("x_" + std::to_string(j + 1));
  return names;
}

void write_stream_bundle(const DataStream& stream, const fs::path& dir) {
  stream.check();
  fs::create_directories(dir);
  const auto names = predictor_names(stream);
  if (static_cast<Index>(names.size()) != stream.dim()) {
    throw DataError("stream column names do not match its dimension");
  }

  json manifest;
  manifest["p"] = stream.dim();
  manifest["T"] = stream.size();
  if (auto it = stream.meta.find("seed"); it != stream.meta.end()) {
    manifest["seed"] = std::stoull(it->second);
  }
  manifest["config"] = stream.meta;
  manifest["columns"] = names;
  manifest["epochs"] = json::array();

  for (std::size_t e = 0; e < stream.size(); ++e) {
    const EpochData& ep = stream.epochs[e];
    const std::string name = epoch_file(e);
    manifest["epochs"].push_back(name);
    std::ofstream out = open_out(dir / name);
    std::vector<std::string> header = names;
    header.push_back("y");
    write_csv_row(out, header);
    std::vector<std::string> row(header.size());
    for (Index i = 0; i < ep.X.rows(); ++i) {
      for (Index j = 0; j < ep.X.cols(); ++j) row[static_cast<std::size_t>(j)] = format_double(ep.X(i, j));
      row.back() = format_double(ep.y(i));
      write_csv_row(out, row);
    }
  }

  if (stream.truth) {
    manifest["truth"] = "truth.csv";
    std::ofstream out = open_out(dir / "truth.csv");
    std::vector<std::string> header{"epoch"};
    for (Index j = 0; j < stream.dim(); ++j) header.push_back("theta_" + std::to_string(j + 1));
    write_csv_row(out, header);
    for (std::size_t e = 0; e < stream.truth->size(); ++e) {
      std::vector<std::string> row{std::to_string(e + 1)};
      for (double v : (*stream.truth)[e]) row.push_back(format_double(v));
      write_csv_row(out, row);
    }
  } else {
    manifest["truth"] = nullptr;
  }

  std::ofstream out = open_out(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
}

DataStream read_stream_bundle(const fs::path& dir) {
  const fs::path manifest_path = dir / "manifest.json";
  std::ifstream in(manifest_path);
  if (!in) throw DataError("missing manifest '" + manifest_path.string() + "'");
  json manifest;
  try {
    in >> manifest;
  } catch (const json::exception& e) {
    throw DataError("manifest.json: " + std::string(e.what()));
  }

  DataStream stream;
  try {
    if (manifest.contains("config") && manifest["config"].is_object()) {
      for (const auto& [key, value] : manifest["config"].items()) {
        stream.meta[key] = value.is_string() ? value.get<std::string>() : value.dump();
      }
    }
    if (manifest.contains("columns")) stream.columns = manifest["columns"].get<std::vector<std::string>>();
    const auto files = manifest.at("epochs").get<std::vector<std::string>>();
    const Index p = manifest.at("p").get<Index>();

    for (std::size_t e = 0; e < files.size(); ++e) {
      const fs::path file = dir / files[e];
      const CsvTable table = read_csv_file(file);
      if (static_cast<Index>(table.header.size()) != p + 1) {
        throw DataError(file.filename().string() + ": expected " + std::to_string(p + 1) +
                        " columns, found " + std::to_string(table.header.size()));
      }
      EpochData ep;
      ep.t = e + 1;
      ep.X.resize(static_cast<Index>(table.rows.size()), p);
      ep.y.resize(static_cast<Index>(table.rows.size()));
      for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (row.size() != table.header.size()) {
          throw DataError(file.filename().string() + ": row " + std::to_string(r + 1) +
                          " has " + std::to_string(row.size()) + " fields");
        }
        for (Index j = 0; j < p; ++j) {
          ep.X(static_cast<Index>(r), j) = parse_cell(row[static_cast<std::size_t>(j)], file, r);
        }
        ep.y(static_cast<Index>(r)) = parse_cell(row.back(), file, r);
      }
      stream.epochs.push_back(std::move(ep));
    }

    if (manifest.contains("truth") && manifest["truth"].is_string()) {
      const fs::path file = dir / manifest["truth"].get<std::string>();
      const CsvTable table = read_csv_file(file);
      std::vector<Vector> truth;
      for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (static_cast<Index>(row.size()) != p + 1) {
          throw DataError("truth.csv: row " + std::to_string(r + 1) + " has wrong length");
        }
        Vector theta(p);
        for (Index j = 0; j < p; ++j) theta(j) = parse_cell(row[static_cast<std::size_t>(j + 1)], file, r);
        truth.push_back(std::move(theta));
      }
      stream.truth = std::move(truth);
    }
  } catch (const json::exception& e) {
    throw DataError("manifest.json: " + std::string(e.what()));
  }
  if (!stream.columns.empty() && static_cast<Index>(stream.columns.size()) != stream.dim()) {
    throw DataError("manifest.json: column list does not match p");
  }
  stream.check();
  return stream;
}

}  // namespace irs
