#pragma once

// Retail transaction records (one invoice line each) read from CSV.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace irs {

/// Header names of the source columns. Defaults follow the UCI Online Retail layout.
struct ColumnMap {
  std::string product = "Description";
  std::string quantity = "Quantity";
  std::string date = "InvoiceDate";
  std::string price = "UnitPrice";
  /// Optional; an empty name or an absent column leaves country blank.
  std::string country = "Country";
};

struct DateTime {
  int year = 1970;
  int month = 1;
  int day = 1;
  int hour = 0;
  int minute = 0;
  int second = 0;

  /// 0 = Monday ... 6 = Sunday.
  int weekday() const;
};

/// Accepts "YYYY-MM-DD HH:MM[:SS]" (also with a 'T' separator) and
/// "M/D/YYYY H:MM[:SS]". The time part may be omitted. Rejects impossible dates.
std::optional<DateTime> parse_datetime(std::string_view text);

struct Transaction {
  std::string product;
  double quantity = 0.0;
  double price = 0.0;
  DateTime when;
  std::string country;
};

struct TransactionLoad {
  std::vector<Transaction> records;
  /// Rows skipped for an unparseable date, quantity or price, or a short row.
  std::size_t dropped = 0;
};

/// Throws DataError for an unreadable or empty file and for a missing
/// required column (the message names it).
TransactionLoad load_transactions(const std::filesystem::path& path, const ColumnMap& map = {});

}  // namespace irs
