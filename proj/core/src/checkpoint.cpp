#include "irs/checkpoint.hpp"

#include "irs/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace irs {

using nlohmann::json;

std::string checkpoint_to_json(const ModelState& state) {
  const Index p = state.dim();
  json j;
  j["theta"] = std::vector<double>(state.theta().data(), state.theta().data() + p);
  std::vector<double> sigma;
  sigma.reserve(static_cast<std::size_t>(p * p));
  for (Index r = 0; r < p; ++r) {
    for (Index c = 0; c < p; ++c) sigma.push_back(state.sigma()(r, c));
  }
  j["sigma"] = std::move(sigma);
  j["w2"] = state.w2();
  j["t"] = state.t();
  return j.dump(2);
}

ModelState checkpoint_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    const auto theta_v = j.at("theta").get<std::vector<double>>();
    const auto sigma_v = j.at("sigma").get<std::vector<double>>();
    const auto p = static_cast<Index>(theta_v.size());
    if (static_cast<Index>(sigma_v.size()) != p * p) {
      throw DataError("checkpoint: sigma has " + std::to_string(sigma_v.size()) +
                      " entries, expected " + std::to_string(p * p));
    }
    Vector theta = Eigen::Map<const Vector>(theta_v.data(), p);
    Matrix sigma(p, p);
    for (Index r = 0; r < p; ++r) {
      for (Index c = 0; c < p; ++c) sigma(r, c) = sigma_v[static_cast<std::size_t>(r * p + c)];
    }
    return ModelState(std::move(theta), std::move(sigma), j.at("w2").get<double>(),
                      j.at("t").get<std::size_t>());
  } catch (const json::exception& e) {
    throw DataError("checkpoint: " + std::string(e.what()));
  }
}

void save_checkpoint(const ModelState& state, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << checkpoint_to_json(state) << '\n';
}

ModelState load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return checkpoint_from_json(buf.str());
}

}  // namespace irs
