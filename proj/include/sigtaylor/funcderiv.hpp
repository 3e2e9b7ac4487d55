#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "sigtaylor/functional.hpp"
#include "sigtaylor/path.hpp"
#include "sigtaylor/words.hpp"

namespace sigtaylor {

enum class TimeScheme {
  forward1,  ///< (f(X_{t,h}) - f(X_t)) / h
  forward2,  ///< (-3 f(X_t) + 4 f(X_{t,h}) - f(X_{t,2h})) / (2h)
};

/// Finite-difference settings for functional derivatives.
///
/// For a word of length n the spatial step is h_x * growth_x^{n-1} and the
/// temporal step h_t * growth_t^{n-1}; with `scale_steps` they are further
/// multiplied by max(1, sup|x|) and max(1, t_end) of the base path.
struct DiffConfig {
  double h_x = 1e-5;
  double h_t = 1e-4;
  double growth_x = 10.0;
  double growth_t = 3.1622776601683795;
  bool scale_steps = true;
  TimeScheme time_scheme = TimeScheme::forward2;
  int max_order = 4;
  int max_malliavin_order = 3;
  bool use_exact = true;
  double kink_tolerance = 1e-4;
};

/// Delta_a f(X) for every word of a table, with Delta_empty f = f(X).
struct DerivTable {
  std::map<Word, double> values;

  double operator[](const Word& w) const;
  bool contains(const Word& w) const { return values.count(w) > 0; }
};

double delta_x(const Functional& f, const Path& x, const DiffConfig& cfg = {});
double delta_t(const Functional& f, const Path& x, const DiffConfig& cfg = {});

/// Delta_a f(X) with the rightmost letter applied first.
double delta_word(const Functional& f, const Path& x, const Word& a, const DiffConfig& cfg = {});

/// Delta_a f(X) for all |a| <= max_len.
DerivTable derivative_table(const Functional& f, const Path& x, int max_len, const DiffConfig& cfg = {});

struct KinkCheck {
  double central;
  double forward;
  double backward;
  bool kink_suspect;
};

/// Delta_x f(X) with one-sided quotients; flags the result when they disagree
/// by more than 10 * kink_tolerance * max(1, |central|).
KinkCheck delta_x_checked(const Functional& f, const Path& x, const DiffConfig& cfg = {});

/// D_t g(X_T) by a central difference under the parallel shift h 1_{[t, T]}.
double malliavin(const Functional& g, const Path& x, double t, const DiffConfig& cfg = {});
/// D_{t_1 ... t_k} g(X_T), nested central differences.
double malliavin_iter(const Functional& g, const Path& x, std::span<const double> times, const DiffConfig& cfg = {});

/// iota_0 g(X_t) = g(X_{t, T - t}) for a T-functional g.
Functional intrinsic_embed(const Functional& g);

struct SeminormEstimate {
  double value;
  std::size_t n_times;
  int n_eps;
};

/// max over grid times s <= t and n_eps equispaced eps in [x_0, x_s] of |phi(X_s^{(eps)})|.
SeminormEstimate seminorm_estimate(const Functional& phi, const Path& x, int n_eps);

/// sum over segments of (phi(X_{t_{n-1}}) + phi(X_{t_n})) / 2 * dx_n.
double strat_integral(const Functional& phi, const Path& x);

/// int_{x_0}^{x_t} phi(X_t^{(eps)}) d eps - int_0^t int_{x_0}^{x_s} Delta_t phi(X_s^{(eps)}) d eps ds,
/// the inner integrals by Gauss-Legendre, the outer by the trapezoid rule on the grid.
double strat_integral_antiderivative(const Functional& phi, const Path& x, const DiffConfig& cfg = {},
                                     bool time_correction = true);

/// f(X_t) - f(X_0) - int Delta_t f ds - int Delta_x f o dx on the grid of x.
double fsf_residual(const Functional& f, const Path& x, const DiffConfig& cfg = {});

/// Block-averaged first Volterra kernel (g(X + h 1_B) - g(X - h 1_B)) / (2 h |B|), B = [t, t + width).
double volterra_kernel1(const Functional& g, const Path& base, double t, double width, const DiffConfig& cfg = {});

/// Functional Delta_a f as a functional.
Functional derivative_functional(const Functional& f, const Word& a, const DiffConfig& cfg = {});

}  // namespace sigtaylor
