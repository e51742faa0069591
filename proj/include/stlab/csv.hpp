#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace stlab {

/// 17 significant digits, '.' decimal
/// point regardless of locale.
std::string format_number(double x);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);

  void row(std::initializer_list<double> values);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
  std::size_t width_;
};

}  // namespace stlab
