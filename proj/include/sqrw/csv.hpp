#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqrw {

// 17 significant digits: enough to round-trip any double.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvTable {
 public:
  CsvTable() = default;
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  std::size_t row_count() const { return rows_.size(); }

  // Cells may be doubles, integers or strings.
  template <typename... Cells>
  void add(const Cells&... cells) {
    std::vector<std::string> row;
    row.reserve(sizeof...(cells));
    (row.push_back(cell(cells)), ...);
    add_row(std::move(row));
  }

  void add_row(std::vector<std::string> row) {
    if (row.size() != header_.size()) {
      throw std::invalid_argument("csv row has " + std::to_string(row.size()) +
                                  " cells, header has " + std::to_string(header_.size()));
    }
    rows_.push_back(std::move(row));
  }

  void append(const CsvTable& other) {
    if (other.header_ != header_) throw std::invalid_argument("csv append: header mismatch");
    rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
  }

 private:
  static std::string cell(double v) { return format_double(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(long v) { return std::to_string(v); }
  static std::string cell(long long v) { return std::to_string(v); }
  static std::string cell(unsigned v) { return std::to_string(v); }
  static std::string cell(unsigned long v) { return std::to_string(v); }
  static std::string cell(unsigned long long v) { return std::to_string(v); }
  static std::string cell(bool v) { return v ? "1" : "0"; }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline void write_csv(const CsvTable& table, std::ostream& os) {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  };
  line(table.header());
  for (const auto& r : table.rows()) line(r);
  if (!os) throw std::runtime_error("csv write failed");
}

inline void write_csv(const CsvTable& table, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(table, f);
  f.close();
  if (!f) throw std::runtime_error("error writing '" + path + "'");
}

}  // namespace sqrw
