#include "stlab/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace stlab {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("format_number: buffer too small");
  return {buf, ptr};
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header) : out_(out), width_(header.size()) {
  row(header);
}

void CsvWriter::row(std::initializer_list<double> values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  row(cells);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw std::logic_error("CsvWriter: row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

}  // namespace stlab
