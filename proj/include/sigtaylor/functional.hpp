#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "sigtaylor/path.hpp"
#include "sigtaylor/words.hpp"

namespace sigtaylor {

/// Raised when a numerical procedure produces a non-finite or unusable value.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A map from paths to reals.
///
/// `horizon` marks a T-functional (only meaningful on paths of length T) or,
/// for embedded functionals, the largest admissible length. `exact`, when
/// set, returns Delta_a f(X) in closed form and is preferred over finite
/// differences.
struct Functional {
  using Evaluator = std::function<double(const Path&)>;
  using Derivative = std::function<double(const Path&, const Word&)>;

  std::string name;
  Evaluator eval;
  std::optional<double> horizon;
  Derivative exact;

  double operator()(const Path& x) const { return eval(x); }
};

/// a f + b g (exact derivatives are combined when both sides have them).
Functional linear_combination(double a, const Functional& f, double b, const Functional& g);

// ---- functional library ----

/// f(X_t) = x_t.
Functional terminal_value();

/// f(X_t) = h(x_t - x_0); derivs(m, y) returns h^{(m)}(y).
Functional increment_function(std::string name, std::function<double(int, double)> derivs);

/// f(X_t) = (x_t - x_0)^k.
Functional increment_power(int k);

/// f(X_t) = c * int_0^t phi(x_s) ds; derivs(m, x) returns phi^{(m)}(x).
Functional time_integral(std::string name, std::function<double(int, double)> derivs, double c = 1.0);

/// f(X_t) = sqrt(2) int_0^t sin(x_s) ds.
Functional sine_integral();

/// f(X_t) = int_0^t phi(s, x_s) ds by 5-point Gauss-Legendre on every segment.
Functional time_integral_tx(std::string name, std::function<double(double, double)> phi);

/// f(X_t) = exp(a (x_t - x_0) + b int_0^t (x_s - x_0) ds).
Functional exp_affine(double a, double b);

/// f(X_t) = sum c_w S_w(X_t).
Functional signature_combination(const std::map<Word, double>& coeffs);
Functional signature_coordinate(const Word& w);

/// f(X_t) = J_k(t, x_t - x_0).
Functional ito_iterated_functional(int k);

/// int_0^t (x_s - x_0) ds, exact for piecewise-linear paths.
double integral_of_increment(const Path& x);

}  // namespace sigtaylor
