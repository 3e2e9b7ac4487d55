#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "sigtaylor/funcderiv.hpp"
#include "sigtaylor/pricing.hpp"

namespace sigtaylor {

/// Everything a subcommand reads. Input and output files are stored as given.
struct RunConfig {
  std::string command;

  std::string path;
  std::string base;
  std::string pert;
  std::string coeffs;
  std::string func;
  std::string payoff;
  std::string word;
  std::string method = "exact";
  std::string orders = "1..6";

  int depth = 4;
  int order = 3;
  int n_eps = 5;
  double safety = 1.1;

  double sigma_coeff = 0.2;
  double sigma_pricing = 0.2;
  double x0 = 0.0;
  double horizon = 1.0;
  std::size_t coeff_mc = 2000;
  int coeff_steps = 64;
  std::size_t verify_paths = 20;

  DiffConfig diff;
  MCConfig mc;

  std::string report;
  std::string json;
  int verbosity = 0;
};

std::string config_to_json(const RunConfig& cfg);
/// Missing keys keep their defaults; unknown keys are rejected.
RunConfig config_from_json(std::string_view text);

/// Exit code 0 on success, 1 on validation errors, 2 on numerical-failure flags.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sigtaylor
