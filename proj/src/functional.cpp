#include "sigtaylor/functional.hpp"

#include <array>
#include <cmath>

#include <fmt/format.h>

#include "sigtaylor/signature.hpp"

namespace sigtaylor {

namespace {

constexpr std::array<double, 5> kGlNodes{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                         0.9061798459386640};
constexpr std::array<double, 5> kGlWeights{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                           0.4786286704993665, 0.2369268850561891};

bool all_ones(const Word& w) { return w.count0() == 0; }

}  // namespace

Functional linear_combination(double a, const Functional& f, double b, const Functional& g) {
  Functional r;
  r.name = fmt::format("{}*{} + {}*{}", a, f.name, b, g.name);
  r.eval = [a, b, f, g](const Path& x) { return a * f(x) + b * g(x); };
  r.horizon = f.horizon ? f.horizon : g.horizon;
  if (f.exact && g.exact)
    r.exact = [a, b, f, g](const Path& x, const Word& w) { return a * f.exact(x, w) + b * g.exact(x, w); };
  return r;
}

Functional terminal_value() {
  Functional f;
  f.name = "terminal";
  f.eval = [](const Path& x) { return x.terminal(); };
  f.exact = [](const Path& x, const Word& w) {
    if (w.empty()) return x.terminal();
    return w.size() == 1 && w.back() == 1 ? 1.0 : 0.0;
  };
  return f;
}

Functional increment_function(std::string name, std::function<double(int, double)> derivs) {
  Functional f;
  f.name = std::move(name);
  f.eval = [derivs](const Path& x) { return derivs(0, x.terminal() - x.start()); };
  f.exact = [derivs](const Path& x, const Word& w) {
    return all_ones(w) ? derivs(w.size(), x.terminal() - x.start()) : 0.0;
  };
  return f;
}

Functional increment_power(int k) {
  return increment_function(fmt::format("increment^{}", k), [k](int m, double y) {
    if (m > k) return 0.0;
    double c = 1.0;
    for (int i = 0; i < m; ++i) c *= k - i;
    return c * std::pow(y, k - m);
  });
}

Functional time_integral(std::string name, std::function<double(int, double)> derivs, double c) {
  Functional f;
  f.name = std::move(name);
  auto phi = [derivs](double, double x) { return derivs(0, x); };
  const Functional base = time_integral_tx(f.name, phi);
  f.eval = [base, c](const Path& x) { return c * base(x); };
  // Delta_x f = 0, Delta_t f = c phi(x_t), and only spatial derivatives of phi(x_t) survive
  f.exact = [base, derivs, c](const Path& x, const Word& w) {
    if (w.empty()) return c * base(x);
    if (w.back() != 0 || !all_ones(w.drop_back())) return 0.0;
    return c * derivs(w.size() - 1, x.terminal());
  };
  return f;
}

Functional sine_integral() {
  return time_integral(
      "sine_integral",
      [](int m, double x) {
        switch (m % 4) {
          case 0: return std::sin(x);
          case 1: return std::cos(x);
          case 2: return -std::sin(x);
          default: return -std::cos(x);
        }
      },
      std::sqrt(2.0));
}

Functional time_integral_tx(std::string name, std::function<double(double, double)> phi) {
  Functional f;
  f.name = std::move(name);
  f.eval = [phi](const Path& x) {
    const auto t = x.times();
    const auto v = x.values();
    double acc = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
      const double h = t[i] - t[i - 1];
      if (h <= 0.0) continue;
      double seg = 0.0;
      for (std::size_t q = 0; q < kGlNodes.size(); ++q) {
        const double u = 0.5 * (kGlNodes[q] + 1.0);
        seg += kGlWeights[q] * phi(t[i - 1] + u * h, v[i - 1] + u * (v[i] - v[i - 1]));
      }
      acc += 0.5 * h * seg;
    }
    return acc;
  };
  return f;
}

double integral_of_increment(const Path& x) {
  const auto t = x.times();
  const auto v = x.values();
  double acc = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) acc += 0.5 * (t[i] - t[i - 1]) * (v[i] + v[i - 1] - 2.0 * v[0]);
  return acc;
}

Functional exp_affine(double a, double b) {
  Functional f;
  f.name = fmt::format("exp_affine({}, {})", a, b);
  f.eval = [a, b](const Path& x) { return std::exp(a * (x.terminal() - x.start()) + b * integral_of_increment(x)); };
  // Delta_a f = P_a(y) f with y = x_t - x_0: letter 1 maps P to P' + a P, letter 0 to b y P
  f.exact = [a, b](const Path& x, const Word& w) {
    const double y = x.terminal() - x.start();
    const double fx = std::exp(a * y + b * integral_of_increment(x));
    std::vector<double> p{1.0};
    for (int i = w.size() - 1; i >= 0; --i) {
      std::vector<double> q(p.size() + 1, 0.0);
      if (w.letter(i) == 1) {
        for (std::size_t j = 0; j < p.size(); ++j) {
          q[j] += a * p[j];
          if (j > 0) q[j - 1] += static_cast<double>(j) * p[j];
        }
      } else {
        for (std::size_t j = 0; j < p.size(); ++j) q[j + 1] += b * p[j];
      }
      p = std::move(q);
    }
    double val = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) val = val * y + *it;
    return val * fx;
  };
  return f;
}

Functional signature_combination(const std::map<Word, double>& coeffs) {
  int depth = 0;
  std::string name;
  for (const auto& [w, c] : coeffs) {
    depth = std::max(depth, w.size());
    name += fmt::format("{}{}*S_{}", name.empty() ? "" : " + ", c, w.str());
  }
  Functional f;
  f.name = name.empty() ? "0" : name;
  f.eval = [coeffs, depth](const Path& x) {
    const Signature s = signature(x, depth);
    double acc = 0.0;
    for (const auto& [w, c] : coeffs) acc += c * s[w];
    return acc;
  };
  // Delta_g sum c_a S_a = sum over a = b g of c_a S_b
  f.exact = [coeffs, depth](const Path& x, const Word& g) {
    if (g.size() > depth) return 0.0;
    const Signature s = signature(x, depth - g.size());
    double acc = 0.0;
    for (const auto& [w, c] : coeffs)
      if (w.ends_with(g)) acc += c * s[w.drop_back(g.size())];
    return acc;
  };
  return f;
}

Functional signature_coordinate(const Word& w) {
  Functional f = signature_combination({{w, 1.0}});
  f.name = fmt::format("S_{}", w.str());
  return f;
}

Functional ito_iterated_functional(int k) {
  Functional f;
  f.name = fmt::format("J_{}", k);
  f.eval = [k](const Path& x) { return ito_iterated(x.length(), x.terminal() - x.start(), k); };
  return f;
}

}  // namespace sigtaylor
