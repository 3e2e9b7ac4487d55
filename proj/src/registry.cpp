#include "sigtaylor/registry.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace sigtaylor {

namespace {

double to_double(std::string_view s, std::string_view name) {
  try {
    std::size_t used = 0;
    const std::string str(s);
    const double v = std::stod(str, &used);
    if (used == str.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument(fmt::format("bad parameter '{}' in '{}'", s, name));
}

int to_int(std::string_view s, std::string_view name) {
  const double v = to_double(s, name);
  if (v != std::floor(v) || v < 0 || v > 64) throw std::invalid_argument(fmt::format("bad order in '{}'", name));
  return static_cast<int>(v);
}

Functional named(Functional f, std::string_view name) {
  f.name = std::string(name);
  return f;
}

}  // namespace

Functional make_functional(std::string_view name) {
  const auto colon = name.find(':');
  const std::string_view head = name.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : name.substr(colon + 1);
  const bool has_arg = colon != std::string_view::npos;

  if (!has_arg) {
    if (name == "terminal") return terminal_value();
    if (name == "increment") return named(increment_power(1), name);
    if (name == "exp_increment")
      return increment_function("exp_increment", [](int, double y) { return std::exp(y); });
    if (name == "exp_integral") return named(exp_affine(0.0, 1.0), name);
    if (name == "sine_integral") return sine_integral();
    if (name.size() > 2 && name.substr(0, 2) == "S_") return named(signature_coordinate(Word::parse(name.substr(2))), name);
  } else {
    if (head == "power") return increment_power(to_int(arg, name));
    if (head == "ito") return ito_iterated_functional(to_int(arg, name));
    if (head == "S") return named(signature_coordinate(Word::parse(arg)), name);
    if (head == "exp_affine") {
      const auto comma = arg.find(',');
      if (comma == std::string_view::npos) throw std::invalid_argument("exp_affine needs 'a,b'");
      return exp_affine(to_double(arg.substr(0, comma), name), to_double(arg.substr(comma + 1), name));
    }
  }
  const auto lib = payoff_library();
  if (auto it = lib.find(std::string(name)); it != lib.end()) return Functional{it->second.name, it->second.eval, {}, {}};
  if (has_arg && (head == "lookback_soft" || head == "call")) {
    Payoff g = make_payoff(name);
    return Functional{g.name, g.eval, {}, {}};
  }
  throw std::invalid_argument(fmt::format("unknown functional '{}'", name));
}

Payoff make_payoff(std::string_view name) {
  const auto lib = payoff_library();
  if (auto it = lib.find(std::string(name)); it != lib.end()) return it->second;
  const auto colon = name.find(':');
  if (colon != std::string_view::npos) {
    const std::string_view head = name.substr(0, colon);
    const std::string_view arg = name.substr(colon + 1);
    if (head == "lookback_soft") {
      const double tau = to_double(arg, name);
      if (tau <= 0) throw std::invalid_argument("lookback_soft needs tau > 0");
      Payoff g = soft_lookback_payoff(tau);
      g.name = std::string(name);
      return g;
    }
    if (head == "call") {
      Payoff g = call_payoff(to_double(arg, name));
      g.name = std::string(name);
      return g;
    }
  }
  Payoff g = payoff_from(make_functional(name));
  g.name = std::string(name);
  return g;
}

std::vector<std::pair<std::string, std::string>> registry_help() {
  return {
      {"terminal", "x_t"},
      {"increment", "x_t - x_0"},
      {"power:k", "(x_t - x_0)^k"},
      {"exp_increment", "exp(x_t - x_0)"},
      {"exp_integral", "exp(int (x_s - x_0) ds)"},
      {"exp_affine:a,b", "exp(a (x_t - x_0) + b int (x_s - x_0) ds)"},
      {"sine_integral", "sqrt(2) int sin(x_s) ds"},
      {"ito:k", "J_k(t, x_t - x_0)"},
      {"S:word", "signature coordinate, e.g. S:0110 (also S_0110)"},
      {"lookback", "max_s x_s - x_0"},
      {"lookback_soft[:tau]", "soft-max lookback, tau = 0.01 by default"},
      {"asian", "((1/T) int (x_s - x_0) ds)^+"},
      {"call[:strike]", "(x_T - x_0 - strike)^+"},
      {"square", "x_T^2"},
      {"integral", "int x_s ds"},
      {"squared_integral", "(int x_s ds)^2"},
  };
}

}  // namespace sigtaylor
