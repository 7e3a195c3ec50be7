#include "irs/features.hpp"

#include "irs/error.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

namespace irs {

namespace {

const char* const kDayNames[] = {"mon", "tue", "wed", "thu", "fri", "sat", "sun"};
const char* const kQuarterNames[] = {"00-06", "06-12", "12-18", "18-24"};

struct Categorical {
  std::string field;
  std::vector<std::string> levels;  // retained levels only
  std::size_t first_column = 0;
};

std::string level_of(const std::string& field, const Transaction& tx) {
  if (field == "product") return tx.product;
  if (field == "country") return tx.country;
  if (field == "dow") return kDayNames[tx.when.weekday()];
  return kQuarterNames[tx.when.hour / 6];
}

std::vector<std::string> all_levels(const std::string& field,
                                    const std::vector<const Transaction*>& records) {
  if (field == "dow") return {std::begin(kDayNames), std::end(kDayNames)};
  if (field == "qod") return {std::begin(kQuarterNames), std::end(kQuarterNames)};
  std::set<std::string> seen;
  for (const auto* tx : records) seen.insert(level_of(field, *tx));
  return {seen.begin(), seen.end()};
}

}  // namespace

FeatureSet build_features(const std::vector<Transaction>& records, const FeatureSpec& spec) {
  for (const auto& f : spec.numeric) {
    if (f != "price") throw ConfigError("unknown numeric field '" + f + "'");
  }
  for (const auto& f : spec.categorical) {
    if (f != "product" && f != "dow" && f != "qod" && f != "country") {
      throw ConfigError("unknown categorical field '" + f + "'");
    }
  }
  if (std::set<std::string>(spec.categorical.begin(), spec.categorical.end()).size() !=
      spec.categorical.size()) {
    throw ConfigError("categorical fields listed twice");
  }

  std::vector<const Transaction*> kept;
  for (const auto& tx : records) {
    if (spec.country.empty() || tx.country == spec.country) kept.push_back(&tx);
  }
  if (kept.empty()) throw DataError("build_features: no records");

  FeatureSet out;
  std::vector<std::string>& names = out.stream.columns;
  // owner[j] = index of the categorical a column belongs to, -1 for numeric
  std::vector<int> owner;
  for (const auto& f : spec.numeric) {
    names.push_back(f);
    owner.push_back(-1);
  }
  std::vector<Categorical> cats;
  for (std::size_t c = 0; c < spec.categorical.size(); ++c) {
    Categorical cat{spec.categorical[c], all_levels(spec.categorical[c], kept), names.size()};
    if (c > 0 && !cat.levels.empty()) cat.levels.erase(cat.levels.begin());
    for (const auto& level : cat.levels) {
      names.push_back(cat.field + "=" + level);
      owner.push_back(static_cast<int>(c));
    }
    cats.push_back(std::move(cat));
  }
  const std::size_t base = names.size();
  out.base_columns = base;

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (spec.interactions) {
    for (std::size_t a = 0; a < base; ++a) {
      for (std::size_t b = a + 1; b < base; ++b) {
        if (spec.skip_same_categorical && owner[a] >= 0 && owner[a] == owner[b]) continue;
        pairs.emplace_back(a, b);
        names.push_back(names[a] + ":" + names[b]);
      }
    }
  }

  std::map<std::pair<int, int>, std::vector<const Transaction*>> by_month;
  for (const auto* tx : kept) by_month[{tx->when.year, tx->when.month}].push_back(tx);

  const auto p = static_cast<Index>(names.size());
  for (const auto& [month, txs] : by_month) {
    EpochData ep;
    ep.t = out.stream.epochs.size() + 1;
    ep.X = Matrix::Zero(static_cast<Index>(txs.size()), p);
    ep.y.resize(static_cast<Index>(txs.size()));
    for (std::size_t r = 0; r < txs.size(); ++r) {
      const Transaction& tx = *txs[r];
      const auto i = static_cast<Index>(r);
      ep.y(i) = tx.quantity;
      Index j = 0;
      for (std::size_t k = 0; k < spec.numeric.size(); ++k) ep.X(i, j++) = tx.price;
      for (const auto& cat : cats) {
        const auto it = std::find(cat.levels.begin(), cat.levels.end(), level_of(cat.field, tx));
        if (it != cat.levels.end()) {
          ep.X(i, static_cast<Index>(cat.first_column) + (it - cat.levels.begin())) = 1.0;
        }
      }
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        ep.X(i, static_cast<Index>(base + k)) =
            ep.X(i, static_cast<Index>(pairs[k].first)) * ep.X(i, static_cast<Index>(pairs[k].second));
      }
    }
    char label[16];
    std::snprintf(label, sizeof label, "%04d-%02d", month.first, month.second);
    out.epoch_labels.push_back(label);
    out.stream.epochs.push_back(std::move(ep));
  }
  out.stream.meta["source"] = "transactions";
  out.stream.meta["base_columns"] = std::to_string(base);
  return out;
}

}  // namespace irs
