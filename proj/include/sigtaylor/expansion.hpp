#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigtaylor/funcderiv.hpp"
#include "sigtaylor/functional.hpp"
#include "sigtaylor/path.hpp"
#include "sigtaylor/words.hpp"

namespace sigtaylor {

struct ExpansionTerm {
  Word word;
  double coefficient;  ///< Delta_a f at the base path
  double signature;    ///< S_a of the perturbation
  double product;
};

struct BoundComponents {
  std::map<Word, double> c_alpha;
  std::map<Word, double> per_word;
  double C_K = 0.0;
  double rho = 0.0;
  double sup_norm = 0.0;
  double sum_bound = 0.0;  ///< sum of the per-word bounds
  double ck_bound = 0.0;   ///< C_K rho^K
};

struct ExpansionReport {
  std::string functional;
  std::string base;
  int order = 0;
  std::vector<ExpansionTerm> terms;
  double truncation = 0.0;
  std::optional<double> exact;
  std::optional<double> remainder;
  std::optional<BoundComponents> bound;
};

/// f(X (+) Y) ~ sum_{|a| < K} Delta_a f(X) S_a(Y). The exact value and remainder are
/// filled in when f can be evaluated at the concatenation.
ExpansionReport fte(const Functional& f, const Path& x, const Path& y, int K, const DiffConfig& cfg = {});

/// fte around the length-zero path at x_0.
ExpansionReport maclaurin(const Functional& f, const Path& x, int K, const DiffConfig& cfg = {});

/// Expands f(X_s) around X_t with the time-reversed restriction X|_{[t,s]}; its
/// time coordinate runs backwards, so S_a picks up a factor (-1)^{|a|_0}.
ExpansionReport fte_backward(const Functional& f, const Path& x, double s, double t, int K,
                             const DiffConfig& cfg = {});

/// Per-word bounds (2^{|a|_01} / |a|_0!) c_a t^{|a|_0} |X|^{|a|_1} over |a| = K with
/// c_a = ||Delta_a f|| + (t v 1) ||Delta_{0a} f|| from sampled seminorms (times `safety`),
/// |X| = sup |x_s - x_0|, and C_K rho^K with rho = 2 (t v |X|).
BoundComponents remainder_bound(const Functional& f, const Path& x, int K, int n_eps, const DiffConfig& cfg = {},
                                double safety = 1.0);

/// (K!)^{C2 - 1} (2 C1 ([Y]_Lip v 1) u)^K.
double remainder_bound_lip(double C1, double C2, const Path& y, int K);
/// (1 / (2 C1)) ^ 1 for C2 < 1, infinity for C2 = 1, 0 for C2 > 1.
double radius_estimate(double C1, double C2);

struct IveReport {
  std::vector<double> order_terms;  ///< index k holds the order-k term
  double truncation = 0.0;
  double exact = 0.0;
  double residual = 0.0;
};

/// g(X_{0,T}) + sum_{1 <= k < K} int D_{t_1..t_k} g(X_{0,T}) o dx^{(k)} on the grid of x.
IveReport ive_expand(const Functional& g, const Path& x, int K, const DiffConfig& cfg = {});

/// Nested trapezoid quadrature of a k-variable kernel against dx over the simplex t_1 <= ... <= t_k.
double iterated_strat_general(const std::function<double(std::span<const double>)>& kernel, int k, const Path& x);

/// sum over |a|_1 = k, |a| <= K_word of Delta_a (iota_0 g)(x_0) phi^a(t_1..t_k).
double ive_kernel_reconstruct(const Functional& g, std::span<const double> times, int K_word,
                              const DiffConfig& cfg = {}, double x0 = 0.0);

struct GaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;  ///< sum to 1: E[h(Z)] ~ sum w_i h(z_i), Z ~ N(0, 1)
};

/// Probabilists' Gauss-Hermite rule with n nodes (Golub-Welsch).
GaussHermite gauss_hermite(int n);

/// Coefficients Delta_{1_k} f(0), k = 0..K, of f(X_t) = E[h(x_t + sigma B_{T-t})]:
/// d^k/dx^k E[h(x_0 + s Z)] = E[h(x_0 + s Z) He_k(Z)] / s^k with s = sigma sqrt(T).
std::vector<double> chaos_coeffs(const std::function<double(double)>& h, double sigma, double T, int K,
                                 double x0 = 0.0, int nodes = 80);

/// sum_k c_k J_k(sigma^2 T, y).
double chaos_reconstruct(std::span<const double> coeffs, double sigma, double T, double y);

/// sum_k c_k sum_{||a|| = k} (-sigma^2 / 2)^{|a|_0} a.
WordPoly chaos_to_signature(std::span<const double> coeffs, double sigma = 1.0);

/// f(X_t) = E[h(x_t + sigma B_{T - t})] by Gauss-Hermite quadrature.
Functional gaussian_price_functional(const std::function<double(double)>& h, double sigma, double T,
                                     int nodes = 80);

}  // namespace sigtaylor
