#pragma once

// Minimal RFC 4180 reader and writer: quoted fields, doubled quotes, CRLF or LF.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace irs {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Position of a header name, or -1.
  int column(std::string_view name) const;
};

/// The first record becomes the header. Blank lines are skipped. Throws
/// DataError on an unterminated quote.
CsvTable read_csv(std::istream& in);
/// Throws DataError when the file cannot be opened.
CsvTable read_csv_file(const std::filesystem::path& path);

/// Quotes fields containing separators, quotes or line breaks.
std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

/// Shortest text that reads back to the same double; nan and inf
/// are written as "nan", "inf", "-inf".
std::string format_double(double v);
/// Whole-field parse with surrounding blanks ignored; nullopt on failure.
std::optional<double> parse_double(std::string_view text);

}  // namespace irs
