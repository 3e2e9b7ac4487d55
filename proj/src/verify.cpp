#include "sigtaylor/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sigtaylor/path.hpp"
#include "sigtaylor/sampling.hpp"
#include "sigtaylor/signature.hpp"
#include "sigtaylor/words.hpp"

namespace sigtaylor {

namespace {

// |S_a(X_t)| <= [X]_Lip^{|a|_1} t^{|a|} / |a|!
double natural_scale(const Word& a, const Path& x) {
  const double lip = std::max(lipschitz_seminorm(x), 1e-3);
  double s = std::pow(x.length(), a.size()) * std::pow(lip, a.count1());
  for (int i = 2; i <= a.size(); ++i) s /= i;
  return s;
}

double rel_err(double a, double b, double scale) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), scale, 1e-300});
}

enum Stream : std::uint64_t { kChen = 0, kShuffle = 1 << 20, kHermite = 2 << 20, kKernel = 3 << 20, kBasis = 4 << 20 };

Path sample(std::uint64_t seed, std::uint64_t stream, std::size_t n, double x0 = 0.0) {
  auto rng = make_stream(seed, stream);
  std::uniform_real_distribution<double> len(0.3, 1.5);
  return random_lipschitz_path(rng, n, len(rng), 2.0, x0);
}

SuiteResult chen(int depth, std::size_t n_paths, std::uint64_t seed) {
  SuiteResult r{"chen", 0, 0.0, 1e-10};
  for (std::size_t p = 0; p < n_paths; ++p) {
    const Path x = sample(seed, kChen + 2 * p, 20, 0.3);
    const Path y = sample(seed, kChen + 2 * p + 1, 15, -0.7);
    const Path xy = concat(x, y);
    const Signature lhs = signature(xy, depth);
    const Signature rhs = chen_concat(signature(x, depth), signature(y, depth));
    for (const auto& a : enumerate_words(depth)) {
      r.max_error = std::max(r.max_error, rel_err(lhs[a], rhs[a], natural_scale(a, xy)));
      ++r.checks;
    }
  }
  return r;
}

SuiteResult shuffle_suite(int depth, std::size_t n_paths, std::uint64_t seed) {
  SuiteResult r{"shuffle", 0, 0.0, 1e-9};
  const auto words = enumerate_words(depth);
  for (std::size_t p = 0; p < n_paths; ++p) {
    const Path x = sample(seed, kShuffle + p, 20, 0.5);
    const Signature s = signature(x, depth);
    for (const auto& u : words)
      for (const auto& v : words) {
        if (u.size() + v.size() > depth) continue;
        r.max_error = std::max(r.max_error, rel_err(evaluate(shuffle(u, v), s), s[u] * s[v], natural_scale(u + v, x)));
        ++r.checks;
      }
  }
  return r;
}

SuiteResult hermite(int depth, std::size_t n_paths, std::uint64_t seed) {
  SuiteResult r{"hermite", 0, 0.0, 1e-9};
  for (std::size_t p = 0; p < n_paths; ++p) {
    const Path x = sample(seed, kHermite + p, 20);
    const Signature s = signature(x, depth);
    for (int k = 0; k <= depth; ++k) {
      const double exact = ito_iterated(x.length(), x.terminal(), k);
      const double scale = natural_scale(Word::ones(k), x);
      r.max_error = std::max(r.max_error, rel_err(evaluate(hermite_combination(k), s), exact, scale));
      ++r.checks;
    }
  }
  return r;
}

// Kernel quadrature on three dyadic refinements with two Richardson steps. The
// error of the nested trapezoid rule on a piecewise-linear path is a polynomial
// in the even powers of the mesh.
SuiteResult kernel(int depth, std::size_t n_paths, std::uint64_t seed) {
  SuiteResult r{"kernel", 0, 0.0, 1e-8};
  for (std::size_t p = 0; p < n_paths; ++p) {
    const Path x = sample(seed, kKernel + p, 6, 0.2);
    const Path g0 = refine(x, 4);
    const Path g1 = refine(g0);
    const Path g2 = refine(g1);
    const Signature s = signature(x, depth);
    for (const auto& a : enumerate_words(depth)) {
      const IveKernel k(a, x.length());
      const double q0 = iterated_strat_with_kernel(k, g0);
      const double q1 = iterated_strat_with_kernel(k, g1);
      const double q2 = iterated_strat_with_kernel(k, g2);
      const double r1 = (4.0 * q1 - q0) / 3.0;
      const double r2 = (4.0 * q2 - q1) / 3.0;
      const double q = (16.0 * r2 - r1) / 15.0;
      r.max_error = std::max(r.max_error, rel_err(q, s[a], natural_scale(a, x)));
      ++r.checks;
    }
  }
  return r;
}

SuiteResult basis(int depth, std::size_t n_paths, std::uint64_t seed) {
  SuiteResult r{"basis", 0, 0.0, 1e-9};
  const auto words = enumerate_words(depth);
  std::vector<WordPoly> reduced;
  for (const auto& a : words) reduced.push_back(basis_reduce(a));
  for (std::size_t p = 0; p < n_paths; ++p) {
    const Path x = sample(seed, kBasis + p, 20, -0.4);
    const Signature s = signature(x, depth);
    for (std::size_t i = 0; i < words.size(); ++i) {
      r.max_error = std::max(r.max_error, rel_err(evaluate(reduced[i], s), s[words[i]], natural_scale(words[i], x)));
      ++r.checks;
    }
  }
  return r;
}

}  // namespace

std::vector<SuiteResult> run_identity_suites(int depth, std::size_t n_paths, std::uint64_t seed) {
  if (depth < 1 || depth > Signature::kMaxDepth) throw std::invalid_argument("depth must be in [1, 12]");
  if (n_paths == 0) throw std::invalid_argument("at least one path is needed");
  return {chen(depth, n_paths, seed), shuffle_suite(depth, n_paths, seed), hermite(depth, n_paths, seed),
          kernel(depth, n_paths, seed), basis(depth, n_paths, seed)};
}

}  // namespace sigtaylor
