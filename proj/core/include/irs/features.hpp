#pragma once

// Turns transaction records into one regression epoch per calendar month:
// response = quantity, predictors = numeric fields, categorical dummies and
// their pairwise products.

#include "irs/simgen.hpp"
#include "irs/transactions.hpp"

#include <string>
#include <vector>

namespace irs {

struct FeatureSpec {
  /// Subset of {"price"}.
  std::vector<std::string> numeric{"price"};
  /// Subset of {"product", "dow", "qod", "country"}. "dow" is the day of week
  /// (Monday first), "qod" the quarter of day in 6-hour bins from midnight.
  /// The first categorical keeps every level; later ones drop their first
  /// level.
  std::vector<std::string> categorical{"product", "dow", "qod"};
  /// Add products of every pair of distinct base columns.
  bool interactions = true;
  /// Leave out products of two dummies of the same categorical (always zero).
  bool skip_same_categorical = false;
  /// Keep only records of this country when non-empty.
  std::string country;
};

struct FeatureSet {
  /// Epochs ordered by month; columns hold the predictor names.
  DataStream stream;
  /// "YYYY-MM" per epoch.
  std::vector<std::string> epoch_labels;
  /// Number of base columns before interactions.
  std::size_t base_columns = 0;
};

/// Levels are the union over every record, so each epoch has the same
/// columns; a level absent from a month shows up as a zero column there.
/// Throws ConfigError for an unknown field name and DataError when no record
/// is left.
FeatureSet build_features(const std::vector<Transaction>& records, const FeatureSpec& spec = {});

}  // namespace irs
