#include "sigtaylor/expansion.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "sigtaylor/signature.hpp"

namespace sigtaylor {

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

ExpansionReport expand(const Functional& f, const Path& base, const Signature& sig, int K, const DiffConfig& cfg,
                       double sign0) {
  ExpansionReport r;
  r.functional = f.name;
  r.order = K;
  for (const Word& w : enumerate_words(K - 1)) {
    const double c = delta_word(f, base, w, cfg);
    const double s = sig[w] * (w.count0() % 2 == 1 ? sign0 : 1.0);
    r.terms.push_back({w, c, s, c * s});
    r.truncation += c * s;
  }
  return r;
}

void check_order(int K) {
  if (K < 1 || K - 1 > Signature::kMaxDepth)
    throw std::invalid_argument(fmt::format("expansion order {} outside [1, {}]", K, Signature::kMaxDepth + 1));
}

// He_0..He_{K-1} at z
std::vector<double> hermite_values(double z, int K) {
  std::vector<double> he(std::max(K, 2));
  he[0] = 1.0;
  he[1] = z;
  for (int k = 1; k + 1 < K; ++k) he[k + 1] = z * he[k] - k * he[k - 1];
  he.resize(K);
  return he;
}

std::vector<double> chaos_with(const GaussHermite& gh, const std::function<double(double)>& h, double s, int K,
                               double x0) {
  std::vector<double> c(K, 0.0);
  for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
    const double hv = h(x0 + s * gh.nodes[i]);
    const auto he = hermite_values(gh.nodes[i], K);
    for (int k = 0; k < K; ++k) c[k] += gh.weights[i] * hv * he[k];
  }
  for (int k = 0; k < K; ++k) c[k] /= std::pow(s, k);
  return c;
}

}  // namespace

ExpansionReport fte(const Functional& f, const Path& x, const Path& y, int K, const DiffConfig& cfg) {
  check_order(K);
  if (y.has_jumps()) throw PathError("the perturbation path must be continuous");
  if (f.horizon && x.length() + y.length() > *f.horizon * (1.0 + 1e-12))
    throw PathError(fmt::format("base and perturbation exceed the horizon {} of {}", *f.horizon, f.name));
  ExpansionReport r = expand(f, x, signature(y, K - 1), K, cfg, 1.0);
  r.exact = f(concat(x, y));
  r.remainder = *r.exact - r.truncation;
  return r;
}

ExpansionReport maclaurin(const Functional& f, const Path& x, int K, const DiffConfig& cfg) {
  ExpansionReport r = fte(f, Path::point(x.start()), x, K, cfg);
  r.base = "zero";
  return r;
}

ExpansionReport fte_backward(const Functional& f, const Path& x, double s, double t, int K, const DiffConfig& cfg) {
  check_order(K);
  if (s > t || s < 0.0 || t > x.length()) throw PathError("fte_backward needs 0 <= s <= t <= length");
  const Path y = reverse_restrict(x, t, s);
  ExpansionReport r = expand(f, prefix(x, t), signature(y, K - 1), K, cfg, -1.0);
  r.exact = f(prefix(x, s));
  r.remainder = *r.exact - r.truncation;
  return r;
}

BoundComponents remainder_bound(const Functional& f, const Path& x, int K, int n_eps, const DiffConfig& cfg,
                                double safety) {
  if (K < 1) throw std::invalid_argument("remainder_bound needs K >= 1");
  BoundComponents b;
  const double t = x.length();
  b.sup_norm = sup_increment(x);
  b.rho = 2.0 * std::max(t, b.sup_norm);
  for (const Word& a : enumerate_words(K)) {
    if (a.size() != K) continue;
    const double n1 = seminorm_estimate(derivative_functional(f, a, cfg), x, n_eps).value;
    const double n2 = seminorm_estimate(derivative_functional(f, a.push_front(0), cfg), x, n_eps).value;
    const double c = safety * (n1 + std::max(t, 1.0) * n2);
    if (!std::isfinite(c)) throw NumericalError(fmt::format("seminorm estimate failed for word {}", a.str()));
    const double w = std::pow(2.0, a.count01()) / factorial(a.count0()) * c * std::pow(t, a.count0()) *
                     std::pow(b.sup_norm, a.count1());
    b.c_alpha[a] = c;
    b.per_word[a] = w;
    b.C_K = std::max(b.C_K, c);
    b.sum_bound += w;
  }
  b.ck_bound = b.C_K * std::pow(b.rho, K);
  return b;
}

double remainder_bound_lip(double C1, double C2, const Path& y, int K) {
  const double rho = 2.0 * C1 * std::max(lipschitz_seminorm(y), 1.0) * y.length();
  return std::pow(factorial(K), C2 - 1.0) * std::pow(rho, K);
}

double radius_estimate(double C1, double C2) {
  if (C2 > 1.0) return 0.0;
  if (C2 == 1.0) return std::numeric_limits<double>::infinity();
  return C1 > 0.0 ? std::min(1.0 / (2.0 * C1), 1.0) : 1.0;
}

double iterated_strat_general(const std::function<double(std::span<const double>)>& kernel, int k, const Path& x) {
  if (x.has_jumps()) throw PathError("iterated integrals need a continuous path");
  const auto t = x.times();
  const auto v = x.values();
  std::vector<double> times(k);
  // integral over t_1 <= ... <= t_m <= s_j with t_{m+1..k} already fixed
  std::function<double(int, std::size_t)> level = [&](int m, std::size_t j) -> double {
    if (m == 0) return kernel(times);
    auto inner = [&](std::size_t n) {
      times[m - 1] = t[n];
      return level(m - 1, n);
    };
    double acc = 0.0;
    double prev = inner(0);
    for (std::size_t n = 1; n <= j; ++n) {
      const double cur = inner(n);
      acc += 0.5 * (prev + cur) * (v[n] - v[n - 1]);
      prev = cur;
    }
    return acc;
  };
  return level(k, x.size() - 1);
}

IveReport ive_expand(const Functional& g, const Path& x, int K, const DiffConfig& cfg) {
  if (K < 1) throw std::invalid_argument("ive_expand needs K >= 1");
  if (x.has_jumps()) throw PathError("ive_expand needs a continuous path");
  const double T = x.length();
  if (g.horizon && std::abs(*g.horizon - T) > 1e-12 * std::max(1.0, T))
    throw PathError(fmt::format("path length {} differs from the horizon {} of {}", T, *g.horizon, g.name));
  if (K - 1 > cfg.max_malliavin_order)
    throw std::invalid_argument(
        fmt::format("Malliavin order {} exceeds the configured maximum {}", K - 1, cfg.max_malliavin_order));
  const Path flat = Path::constant(x.start(), T);
  IveReport r;
  r.order_terms.push_back(g(flat));
  for (int k = 1; k < K; ++k) {
    auto kern = [&](std::span<const double> ts) { return malliavin_iter(g, flat, ts, cfg); };
    r.order_terms.push_back(iterated_strat_general(kern, k, x));
  }
  for (double v : r.order_terms) r.truncation += v;
  r.exact = g(x);
  r.residual = r.exact - r.truncation;
  return r;
}

double ive_kernel_reconstruct(const Functional& g, std::span<const double> times, int K_word, const DiffConfig& cfg,
                              double x0) {
  if (!g.horizon) throw std::invalid_argument(fmt::format("{} has no declared horizon", g.name));
  const double T = *g.horizon;
  const int k = static_cast<int>(times.size());
  const Functional f = intrinsic_embed(g);
  const Path zero = Path::point(x0);
  double acc = 0.0;
  for (const Word& a : enumerate_words(K_word)) {
    if (a.count1() != k) continue;
    acc += delta_word(f, zero, a, cfg) * ive_kernel_eval(IveKernel(a, T), times);
  }
  return acc;
}

GaussHermite gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Hermite rule needs at least one node");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int i = 0; i + 1 < n; ++i) sub[i] = std::sqrt(static_cast<double>(i + 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw NumericalError("Gauss-Hermite eigenvalue problem failed");
  GaussHermite gh;
  for (int i = 0; i < n; ++i) {
    gh.nodes.push_back(es.eigenvalues()[i]);
    const double v = es.eigenvectors()(0, i);
    gh.weights.push_back(v * v);
  }
  return gh;
}

std::vector<double> chaos_coeffs(const std::function<double(double)>& h, double sigma, double T, int K, double x0,
                                 int nodes) {
  if (!(sigma > 0.0) || !(T > 0.0)) throw std::invalid_argument("chaos_coeffs needs sigma > 0 and T > 0");
  if (K < 0) throw std::invalid_argument("chaos_coeffs needs K >= 0");
  const double s = sigma * std::sqrt(T);
  const auto c = chaos_with(gauss_hermite(nodes), h, s, K + 1, x0);
  const auto c2 = chaos_with(gauss_hermite(nodes + nodes / 2), h, s, K + 1, x0);
  for (int k = 0; k <= K; ++k) {
    if (!std::isfinite(c[k])) throw NumericalError(fmt::format("non-finite chaos coefficient {}", k));
    const double scale = std::max({1.0, std::abs(c[k]), std::abs(c2[k])});
    if (std::abs(c[k] - c2[k]) > 1e-6 * scale)
      throw NumericalError(fmt::format("Gauss-Hermite quadrature did not converge for coefficient {}", k));
  }
  return c;
}

double chaos_reconstruct(std::span<const double> coeffs, double sigma, double T, double y) {
  double acc = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) acc += coeffs[k] * ito_iterated(sigma * sigma * T, y, static_cast<int>(k));
  return acc;
}

WordPoly chaos_to_signature(std::span<const double> coeffs, double sigma) {
  WordPoly p;
  const double q = -0.5 * sigma * sigma;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0.0) continue;
    for (const Word& w : words_with_weight(static_cast<int>(k))) p.add(w, coeffs[k] * std::pow(q, w.count0()));
  }
  return p;
}

Functional gaussian_price_functional(const std::function<double(double)>& h, double sigma, double T, int nodes) {
  const GaussHermite gh = gauss_hermite(nodes);
  Functional f;
  f.name = fmt::format("gaussian_price(sigma={}, T={})", sigma, T);
  f.horizon = T;
  f.eval = [gh, h, sigma, T](const Path& x) {
    const double s = sigma * std::sqrt(std::max(0.0, T - x.length()));
    double acc = 0.0;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i) acc += gh.weights[i] * h(x.terminal() + s * gh.nodes[i]);
    return acc;
  };
  return f;
}

}  // namespace sigtaylor
