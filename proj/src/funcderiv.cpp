#include "sigtaylor/funcderiv.hpp"

#include <array>
#include <cmath>

#include <fmt/format.h>

namespace sigtaylor {

namespace {

constexpr std::array<double, 5> kGlNodes{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                         0.9061798459386640};
constexpr std::array<double, 5> kGlWeights{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                           0.4786286704993665, 0.2369268850561891};

struct Steps {
  double hx;
  double ht;
};

Steps steps_for(const Path& x, int order, const DiffConfig& cfg) {
  double hx = cfg.h_x * std::pow(cfg.growth_x, order - 1);
  double ht = cfg.h_t * std::pow(cfg.growth_t, order - 1);
  if (cfg.scale_steps) {
    hx *= std::max(1.0, sup_norm(x));
    ht *= std::max(1.0, x.length());
  }
  if (!(hx > 0.0) || !(ht > 0.0)) throw NumericalError("finite-difference step must be positive");
  const double xs = std::max(1.0, sup_norm(x));
  if (xs + hx == xs) throw NumericalError("spatial step underflows");
  if (x.length() + ht == x.length()) throw NumericalError("temporal step underflows");
  return {hx, ht};
}

double checked(double v, const Functional& f) {
  if (!std::isfinite(v)) throw NumericalError(fmt::format("non-finite value of {}", f.name));
  return v;
}

double nested(const Functional& f, const Path& x, const Word& a, int pos, const Steps& st, const DiffConfig& cfg) {
  if (pos == a.size()) return checked(f(x), f);
  if (a.letter(pos) == 1) {
    return (nested(f, bump(x, st.hx), a, pos + 1, st, cfg) - nested(f, bump(x, -st.hx), a, pos + 1, st, cfg)) /
           (2.0 * st.hx);
  }
  const double h = st.ht;
  const double f0 = nested(f, x, a, pos + 1, st, cfg);
  const double f1 = nested(f, stop_extend(x, h, f.horizon), a, pos + 1, st, cfg);
  if (cfg.time_scheme == TimeScheme::forward1) return (f1 - f0) / h;
  const double f2 = nested(f, stop_extend(x, 2.0 * h, f.horizon), a, pos + 1, st, cfg);
  return (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
}

// int_{lo}^{hi} g(eps) d eps by composite 5-point Gauss-Legendre on `panels` panels
template <class G>
double gl_integral(double lo, double hi, G&& g, int panels = 4) {
  if (lo == hi) return 0.0;
  const double w = (hi - lo) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * w;
    for (std::size_t q = 0; q < kGlNodes.size(); ++q) acc += kGlWeights[q] * g(a + 0.5 * w * (kGlNodes[q] + 1.0));
  }
  return 0.5 * w * acc;
}

}  // namespace

double DerivTable::operator[](const Word& w) const {
  auto it = values.find(w);
  if (it == values.end()) throw std::out_of_range(fmt::format("no derivative for word {}", w.str()));
  return it->second;
}

double delta_x(const Functional& f, const Path& x, const DiffConfig& cfg) {
  return delta_word(f, x, Word::ones(1), cfg);
}

double delta_t(const Functional& f, const Path& x, const DiffConfig& cfg) {
  return delta_word(f, x, Word::zeros(1), cfg);
}

double delta_word(const Functional& f, const Path& x, const Word& a, const DiffConfig& cfg) {
  if (a.empty()) return checked(f(x), f);
  if (cfg.use_exact && f.exact) return checked(f.exact(x, a), f);
  if (a.size() > cfg.max_order)
    throw std::invalid_argument(
        fmt::format("derivative order {} of {} exceeds the configured maximum {}", a.size(), f.name, cfg.max_order));
  return nested(f, x, a, 0, steps_for(x, a.size(), cfg), cfg);
}

DerivTable derivative_table(const Functional& f, const Path& x, int max_len, const DiffConfig& cfg) {
  DerivTable t;
  for (const Word& w : enumerate_words(max_len)) t.values[w] = delta_word(f, x, w, cfg);
  return t;
}

KinkCheck delta_x_checked(const Functional& f, const Path& x, const DiffConfig& cfg) {
  const Steps st = steps_for(x, 1, cfg);
  const double f0 = checked(f(x), f);
  const double fp = checked(f(bump(x, st.hx)), f);
  const double fm = checked(f(bump(x, -st.hx)), f);
  KinkCheck k{(fp - fm) / (2.0 * st.hx), (fp - f0) / st.hx, (f0 - fm) / st.hx, false};
  k.kink_suspect = std::abs(k.forward - k.backward) > 10.0 * cfg.kink_tolerance * std::max(1.0, std::abs(k.central));
  return k;
}

double malliavin(const Functional& g, const Path& x, double t, const DiffConfig& cfg) {
  std::array<double, 1> ts{t};
  return malliavin_iter(g, x, ts, cfg);
}

double malliavin_iter(const Functional& g, const Path& x, std::span<const double> times, const DiffConfig& cfg) {
  const int k = static_cast<int>(times.size());
  if (k == 0) return checked(g(x), g);
  if (k > cfg.max_malliavin_order)
    throw std::invalid_argument(fmt::format("Malliavin order {} exceeds the configured maximum {}", k,
                                            cfg.max_malliavin_order));
  const double h = steps_for(x, k, cfg).hx;
  std::function<double(const Path&, int)> rec = [&](const Path& y, int i) -> double {
    if (i == k) return checked(g(y), g);
    return (rec(parallel_shift(y, times[i], h), i + 1) - rec(parallel_shift(y, times[i], -h), i + 1)) / (2.0 * h);
  };
  return rec(x, 0);
}

Functional intrinsic_embed(const Functional& g) {
  if (!g.horizon) throw std::invalid_argument(fmt::format("{} has no declared horizon", g.name));
  const double T = *g.horizon;
  Functional f;
  f.name = fmt::format("iota0({})", g.name);
  f.horizon = T;
  f.eval = [g, T](const Path& x) {
    if (x.length() > T * (1.0 + 1e-12)) throw PathError("path longer than the horizon");
    return g(stop_extend(x, std::max(0.0, T - x.length()), T));
  };
  return f;
}

SeminormEstimate seminorm_estimate(const Functional& phi, const Path& x, int n_eps) {
  if (n_eps < 2) throw std::invalid_argument("seminorm_estimate needs n_eps >= 2");
  double best = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Path xs = head(x, i);
    const double lo = std::min(x.start(), xs.terminal());
    const double hi = std::max(x.start(), xs.terminal());
    for (int j = 0; j < n_eps; ++j) {
      const double eps = lo + (hi - lo) * j / (n_eps - 1);
      best = std::max(best, std::abs(checked(phi(bump_to(xs, eps)), phi)));
    }
  }
  return {best, x.size(), n_eps};
}

double strat_integral(const Functional& phi, const Path& x) {
  double acc = 0.0;
  double prev = checked(phi(head(x, 0)), phi);
  const auto v = x.values();
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double cur = checked(phi(head(x, i)), phi);
    acc += 0.5 * (prev + cur) * (v[i] - v[i - 1]);
    prev = cur;
  }
  return acc;
}

double strat_integral_antiderivative(const Functional& phi, const Path& x, const DiffConfig& cfg,
                                     bool time_correction) {
  const double x0 = x.start();
  const double main = gl_integral(x0, x.terminal(), [&](double e) { return phi(bump_to(x, e)); });
  if (!time_correction) return main;
  const auto t = x.times();
  auto inner = [&](std::size_t i) {
    const Path xs = head(x, i);
    return gl_integral(x0, xs.terminal(), [&](double e) { return delta_t(phi, bump_to(xs, e), cfg); });
  };
  double corr = 0.0;
  double prev = inner(0);
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double cur = inner(i);
    corr += 0.5 * (prev + cur) * (t[i] - t[i - 1]);
    prev = cur;
  }
  return main - corr;
}

double fsf_residual(const Functional& f, const Path& x, const DiffConfig& cfg) {
  const auto t = x.times();
  const auto v = x.values();
  double time_part = 0.0, space_part = 0.0;
  Path prev = head(x, 0);
  double dt_prev = delta_t(f, prev, cfg);
  double dx_prev = delta_x(f, prev, cfg);
  for (std::size_t i = 1; i < x.size(); ++i) {
    const Path cur = head(x, i);
    const double dt_cur = delta_t(f, cur, cfg);
    const double dx_cur = delta_x(f, cur, cfg);
    time_part += 0.5 * (dt_prev + dt_cur) * (t[i] - t[i - 1]);
    space_part += 0.5 * (dx_prev + dx_cur) * (v[i] - v[i - 1]);
    dt_prev = dt_cur;
    dx_prev = dx_cur;
  }
  return f(x) - f(head(x, 0)) - time_part - space_part;
}

double volterra_kernel1(const Functional& g, const Path& base, double t, double width, const DiffConfig& cfg) {
  const double T = base.length();
  if (t < 0.0 || !(width > 0.0) || t + width > T * (1.0 + 1e-12))
    throw PathError("Volterra window exceeds the horizon");
  const double h = steps_for(base, 1, cfg).hx;
  const double b = std::min(t + width, T);
  return (g(block_shift(base, t, b, h)) - g(block_shift(base, t, b, -h))) / (2.0 * h * width);
}

Functional derivative_functional(const Functional& f, const Word& a, const DiffConfig& cfg) {
  Functional d;
  d.name = fmt::format("Delta_{}({})", a.str(), f.name);
  d.horizon = f.horizon;
  d.eval = [f, a, cfg](const Path& x) { return delta_word(f, x, a, cfg); };
  if (f.exact) d.exact = [f, a](const Path& x, const Word& w) { return f.exact(x, w + a); };
  return d;
}

}  // namespace sigtaylor
