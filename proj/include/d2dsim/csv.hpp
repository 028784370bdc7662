#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace d2d {

// Shortest representation with 9 significant digits; stable across runs, so
// equal inputs give byte-identical files.
inline std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// Minimal CSV emitter: optional '#' comment lines (schema version), one header
// row, then numeric rows.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void comment(const std::string& text) { out_ << "# " << text << "\n"; }

  void header(const std::vector<std::string>& names) { write_line(names); }

  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (const double v : values) cells.push_back(format_g9(v));
    write_line(cells);
  }

 private:
  void write_line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << "\n";
  }

  std::ostream& out_;
};

}  // namespace d2d
