#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sigtaylor/functional.hpp"
#include "sigtaylor/pricing.hpp"

namespace sigtaylor {

/// Looks up a functional by name. Parameterized names use a colon:
/// `power:3`, `ito:2`, `S:0110`, `exp_affine:1,0.5`. Payoff names are accepted too.
/// Throws std::invalid_argument for unknown names.
Functional make_functional(std::string_view name);

/// Payoff library names plus `lookback_soft:tau`, `call:strike` and every functional name.
Payoff make_payoff(std::string_view name);

/// One line per entry: name and description.
std::vector<std::pair<std::string, std::string>> registry_help();

}  // namespace sigtaylor
