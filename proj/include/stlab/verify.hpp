#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stlab::verify {

enum class Level { fast, full };

struct Options {
  Level level = Level::fast;
  std::uint64_t seed = 42;
  // Test hook: multiplies S~ in the H^S derivative identity. 1 means off.
  double s_tilde_scale = 1.0;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double metric = 0.0;
  double tolerance = 0.0;
  std::string comparison = "<=";  // metric <= tolerance, or ">=" for p-values
};

std::vector<CheckResult> run_checks(const Options& opts);

std::string to_json_line(const CheckResult& r);

}  // namespace stlab::verify
