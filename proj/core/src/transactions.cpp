#include "irs/transactions.hpp"

#include "irs/csv.hpp"
#include "irs/error.hpp"

#include <charconv>
#include <chrono>

namespace irs {

int DateTime::weekday() const {
  const std::chrono::year_month_day ymd{std::chrono::year{year},
                                        std::chrono::month{static_cast<unsigned>(month)},
                                        std::chrono::day{static_cast<unsigned>(day)}};
  // iso_encoding: Monday = 1 ... Sunday = 7
  return static_cast<int>(std::chrono::weekday{std::chrono::sys_days{ymd}}.iso_encoding()) - 1;
}

namespace {

// Reads an unsigned run of 1..max_digits digits starting at pos.
bool read_int(std::string_view s, std::size_t& pos, int max_digits, int& out) {
  std::size_t end = pos;
  while (end < s.size() && end - pos < static_cast<std::size_t>(max_digits) && s[end] >= '0' &&
         s[end] <= '9') {
    ++end;
  }
  if (end == pos) return false;
  std::from_chars(s.data() + pos, s.data() + end, out);
  pos = end;
  return true;
}

bool expect(std::string_view s, std::size_t& pos, char c) {
  if (pos < s.size() && s[pos] == c) {
    ++pos;
    return true;
  }
  return false;
}

bool parse_time(std::string_view s, std::size_t& pos, DateTime& dt) {
  if (pos == s.size()) return true;
  if (s[pos] != ' ' && s[pos] != 'T') return false;
  ++pos;
  while (pos < s.size() && s[pos] == ' ') ++pos;
  if (!read_int(s, pos, 2, dt.hour) || !expect(s, pos, ':') || !read_int(s, pos, 2, dt.minute)) {
    return false;
  }
  if (expect(s, pos, ':') && !read_int(s, pos, 2, dt.second)) return false;
  return pos == s.size();
}

bool valid(const DateTime& dt) {
  const std::chrono::year_month_day ymd{std::chrono::year{dt.year},
                                        std::chrono::month{static_cast<unsigned>(dt.month)},
                                        std::chrono::day{static_cast<unsigned>(dt.day)}};
  return ymd.ok() && dt.hour >= 0 && dt.hour < 24 && dt.minute >= 0 && dt.minute < 60 &&
         dt.second >= 0 && dt.second < 61;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::optional<DateTime> parse_datetime(std::string_view text) {
  const std::string_view s = trim(text);
  DateTime dt;
  std::size_t pos = 0;
  int first = 0;
  if (!read_int(s, pos, 4, first)) return std::nullopt;
  if (pos == 4 && expect(s, pos, '-')) {
    dt.year = first;
    if (!read_int(s, pos, 2, dt.month) || !expect(s, pos, '-') || !read_int(s, pos, 2, dt.day)) {
      return std::nullopt;
    }
  } else if (pos <= 2 && expect(s, pos, '/')) {
    dt.month = first;
    if (!read_int(s, pos, 2, dt.day) || !expect(s, pos, '/')) return std::nullopt;
    const std::size_t y0 = pos;
    if (!read_int(s, pos, 4, dt.year) || pos - y0 != 4) return std::nullopt;
  } else {
    return std::nullopt;
  }
  if (!parse_time(s, pos, dt) || !valid(dt)) return std::nullopt;
  return dt;
}

TransactionLoad load_transactions(const std::filesystem::path& path, const ColumnMap& map) {
  const CsvTable table = read_csv_file(path);
  if (table.header.empty()) throw DataError("'" + path.string() + "' is empty");

  auto required = [&](const std::string& name) {
    const int idx = table.column(name);
    if (idx < 0) throw DataError("missing required column '" + name + "'");
    return static_cast<std::size_t>(idx);
  };
  const std::size_t c_product = required(map.product);
  const std::size_t c_quantity = required(map.quantity);
  const std::size_t c_date = required(map.date);
  const std::size_t c_price = required(map.price);
  const int c_country = map.country.empty() ? -1 : table.column(map.country);

  TransactionLoad out;
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) {
      ++out.dropped;
      continue;
    }
    const auto when = parse_datetime(row[c_date]);
    const auto quantity = parse_double(row[c_quantity]);
    const auto price = parse_double(row[c_price]);
    if (!when || !quantity || !price) {
      ++out.dropped;
      continue;
    }
    Transaction tx;
    tx.product = std::string(trim(row[c_product]));
    tx.quantity = *quantity;
    tx.price = *price;
    tx.when = *when;
    if (c_country >= 0) tx.country = std::string(trim(row[static_cast<std::size_t>(c_country)]));
    out.records.push_back(std::move(tx));
  }
  return out;
}

}  // namespace irs
