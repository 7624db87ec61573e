#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace ddosfc {

/// Shortest decimal text that reads back to the identical double
/// (locale-independent, '.' separator). Integral values print without a
/// fraction: 62589, not 62589.0.
std::string format_number(double value);

/// Fixed-point with the given number of decimals, locale-independent.
std::string format_fixed(double value, int decimals);

/// Comma-separated writer; fields never need quoting in this project's
/// exports, so none is attempted.
class CsvWriter {
 public:
  explicit CsvWriter(std::initializer_list<std::string_view> header);
  explicit CsvWriter(const std::vector<std::string>& header);

  void row(const std::vector<std::string>& fields);
  const std::string& str() const { return text_; }

 private:
  std::size_t columns_;
  std::string text_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column, or throws InvalidArgument.
  std::size_t column(std::string_view name) const;
};

/// Splits on newlines and commas; the first line is the header.
CsvTable parse_csv(std::string_view text);

/// Strict full-string double parse (std::from_chars).
double parse_double(std::string_view text);

}  // namespace ddosfc
