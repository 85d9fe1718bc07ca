#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace biham::verify {

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"jacobi", "brackets", "reduction", "hierarchy", "realforms", "heisenberg"};
  return names;
}

struct Config {
  std::size_t n = 3;
  std::uint64_t seed = 0;
  int trials = 100;
  std::optional<double> tol;  ///< overrides every floating-point tolerance when set
  double tol_reg = 1e-8;
  std::optional<double> fd_step;
  std::string suite = "all";
  std::string slice = "both";  ///< hyp, trig or both
  double radius = 0.2;
  int steps = 2000;
  unsigned threads = 0;  ///< 0: hardware concurrency; results do not depend on it
  std::optional<std::string> certificate;  ///< jacobi certificate output path
};

/// Throws std::invalid_argument on an invalid configuration.
void validate(const Config& c);

struct Entry {
  std::string tag;
  std::string identity;
  double max_residual = 0.0;
  double tolerance = 0.0;
  long trials = 0;
  bool exact = false;
  bool pass = true;
};

struct Report {
  Config config;
  std::vector<Entry> entries;  ///< sorted by tag
  bool pass() const;
};

Report run(const Config& c);

nlohmann::ordered_json to_json(const Report& r);
/// Pretty-printed with a trailing newline.
std::string dump(const Report& r);

}  // namespace biham::verify
