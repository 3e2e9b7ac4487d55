#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sigtaylor/expansion.hpp"
#include "sigtaylor/funcderiv.hpp"
#include "sigtaylor/functional.hpp"
#include "sigtaylor/path.hpp"
#include "sigtaylor/signature.hpp"

namespace sigtaylor {

/// Bachelier measure Q_sigma: x_0 + sigma W. sigma = 0 is the intrinsic embedding.
struct BachelierMeasure {
  double sigma = 0.2;
  double x0 = 0.0;
};

struct MCConfig {
  std::size_t n_paths = 200000;
  std::uint64_t seed = 42;
  bool antithetic = true;
  int steps = 512;  ///< grid step = (simulated length) / steps
};

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// A claim on paths of length T.
///
/// `eval_with_max`, when set, is used by the Monte Carlo engine with the
/// continuous-time maximum of the simulated part of the path (Brownian bridge)
/// in place of the grid maximum. `closed_form` returns the price at t = 0.
struct Payoff {
  std::string name;
  std::function<double(const Path&)> eval;
  std::function<double(const Path&, double)> eval_with_max;
  std::function<double(const BachelierMeasure&, double)> closed_form;

  double operator()(const Path& x) const { return eval(x); }
};

Payoff payoff_from(const Functional& f);
/// The payoff as a T-functional.
Functional as_functional(const Payoff& g, double T);

/// n_paths paths of x_0 + sigma W on [0, T]; antithetic partners are adjacent.
std::vector<Path> bachelier_paths(const BachelierMeasure& m, double T, const MCConfig& cfg);

/// E[g(X_t (+) Z)] over continuations Z of length T - t_end under m (x_0 of m is unused).
McEstimate conditioned_expectation(const Payoff& g, const Path& x, const BachelierMeasure& m, double T,
                                   const MCConfig& cfg);

/// Monte Carlo price E[g(Y_T)] with Y started at m.x0.
McEstimate mc_price(const Payoff& g, const BachelierMeasure& m, double T, const MCConfig& cfg);

/// iota_Q g as a deterministic functional. Every evaluation reuses the same
/// standard noise, rescaled to the remaining horizon (common random numbers).
Functional price_embed(const Payoff& g, const BachelierMeasure& m, double T, const MCConfig& cfg);

struct ExpectedSignature {
  Signature mean;
  std::vector<double> std_error;  ///< by word rank
};

/// Monte Carlo mean of the piecewise-linear signatures of simulated paths.
ExpectedSignature expected_signature(const BachelierMeasure& m, double T, int K, const MCConfig& cfg);

/// exp(T (e_0 + sigma^2 / 2 e_1 e_1)) truncated at depth K: the Stratonovich expected signature.
Signature expected_signature_exact(double sigma, double T, int K);

struct SigPriceTerm {
  Word word;
  double coefficient;
  double expected_signature;
  double product;
};

struct SigPriceReport {
  double price = 0.0;
  double std_error = 0.0;
  std::vector<SigPriceTerm> terms;
  DerivTable coefficients;
  bool kink_suspect = false;
};

/// sum_{|a| <= K} Delta_a(iota_{Q_{sigma_coeff}} g)(x_0) E^{pricing}[S_a(Y_T)], with the
/// expectation and its standard error from the pathwise combination.
SigPriceReport sig_price(const Payoff& g, double sigma_coeff, int K, const BachelierMeasure& pricing, double T,
                         const MCConfig& coeff_cfg, const MCConfig& price_cfg, const DiffConfig& dcfg = {});

/// u(t, x, m) of the at-the-money lookback under Q_sigma.
double lookback_oracle(double t, double x, double m_run, double sigma, double T, double x0);

struct HedgeResult {
  double error = 0.0;
  /// (lambda, error on the path scaled by lambda in time and space)
  std::vector<std::pair<double, double>> profile;
  /// least-squares slope of log2 |error| against log2 lambda
  double slope = 0.0;
};

/// X scaled by lambda: x_0 + lambda (x_{s / lambda} - x_0) on [0, lambda T]. Lipschitz seminorm unchanged.
Path scale_path(const Path& x, double lambda);

/// g(X_T) - sum_{|a| < K} c_a S_a(X_T), with the profile over lambda = 1, 1/2, 1/4, 1/8.
HedgeResult hedge_error(const Functional& g, const DerivTable& coeffs, const Path& x, int K);

/// lookback, lookback_soft, asian, call, terminal, square, integral, exp_integral, squared_integral.
std::map<std::string, Payoff> payoff_library();

Payoff lookback_payoff();
/// tau log((1/T) int exp((x_s - x_0) / tau) ds), a smooth approximation of max - x_0 from below.
Payoff soft_lookback_payoff(double tau);
Payoff asian_payoff();
/// (x_T - x_0 - strike)^+
Payoff call_payoff(double strike = 0.0);

}  // namespace sigtaylor
