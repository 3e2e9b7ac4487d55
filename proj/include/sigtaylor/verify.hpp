#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sigtaylor {

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  double max_error = 0.0;  ///< relative, against the natural scale of each coordinate
  double tolerance = 0.0;
  bool pass() const { return max_error <= tolerance; }
};

/// Identity suites on random Lipschitz paths: Chen, shuffle, Hermite, kernel, basis.
std::vector<SuiteResult> run_identity_suites(int depth, std::size_t n_paths, std::uint64_t seed);

}  // namespace sigtaylor
