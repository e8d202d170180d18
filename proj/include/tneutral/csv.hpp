#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tneutral {

// RFC-4180 style CSV with LF line endings. Reals are printed with 17
// significant digits; empty optionals become empty fields.
class CsvTable {
 public:
  using Cell = std::variant<std::monostate, double, std::int64_t, std::string, bool>;

  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<Cell> row);
  std::size_t rows() const noexcept { return rows_.size(); }
  const std::vector<std::string>& header() const noexcept { return header_; }

  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

std::string format_real(double x);

// Minimal reader for tables written by CsvTable (no embedded newlines).
struct ParsedCsv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
};
ParsedCsv parse_csv(const std::string& text);

}  // namespace tneutral
