#include "sigtaylor/pricing.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "sigtaylor/parallel.hpp"
#include "sigtaylor/sampling.hpp"

namespace sigtaylor {

namespace {

constexpr std::size_t kChunk = 256;

double norm_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }
double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

std::size_t sample_count(const MCConfig& cfg) {
  if (cfg.n_paths < 2) throw std::invalid_argument("Monte Carlo needs at least two paths");
  if (cfg.steps < 1) throw std::invalid_argument("Monte Carlo needs at least one step");
  if (cfg.antithetic && cfg.n_paths % 2 != 0)
    throw std::invalid_argument("antithetic sampling needs an even number of paths");
  return cfg.antithetic ? cfg.n_paths / 2 : cfg.n_paths;
}

// standard normals and bridge uniforms of one sample
struct Noise {
  std::vector<double> z;
  std::vector<double> u;
};

void draw_noise(const MCConfig& cfg, std::size_t sample, bool bridge, Noise& out) {
  auto rng = make_stream(cfg.seed, sample);
  std::normal_distribution<double> normal;
  out.z.resize(cfg.steps);
  for (auto& v : out.z) v = normal(rng);
  out.u.clear();
  if (bridge) {
    std::uniform_real_distribution<double> unif;
    out.u.resize(cfg.steps);
    for (auto& v : out.u) v = 1.0 - unif(rng);
  }
}

struct NoiseBank {
  std::size_t samples;
  int steps;
  bool bridge;
  std::vector<Noise> noise;
};

std::shared_ptr<const NoiseBank> make_bank(const MCConfig& cfg, bool bridge) {
  auto bank = std::make_shared<NoiseBank>();
  bank->samples = sample_count(cfg);
  bank->steps = cfg.steps;
  bank->bridge = bridge;
  bank->noise.resize(bank->samples);
  parallel_for(bank->samples, [&](std::size_t j) { draw_noise(cfg, j, bridge, bank->noise[j]); });
  return bank;
}

// Brownian motion of volatility sigma on [0, length] started at `start`; `sign` flips the noise
Path build_path(const Noise& n, double sigma, double length, double start, double sign) {
  const std::size_t steps = n.z.size();
  const double dt = length / static_cast<double>(steps);
  const double scale = sign * sigma * std::sqrt(dt);
  std::vector<double> t(steps + 1), v(steps + 1);
  t[0] = 0.0;
  v[0] = start;
  for (std::size_t j = 0; j < steps; ++j) {
    t[j + 1] = dt * static_cast<double>(j + 1);
    v[j + 1] = v[j] + scale * n.z[j];
  }
  t[steps] = length;
  return Path(std::move(t), std::move(v));
}

// continuous maximum: largest of the Brownian-bridge maxima of the segments
double bridge_max(const Path& z, const Noise& n, double sigma) {
  const auto t = z.times();
  const auto v = z.values();
  double m = v[0];
  for (std::size_t j = 1; j < z.size(); ++j) {
    const double a = v[j - 1], b = v[j];
    const double var = sigma * sigma * (t[j] - t[j - 1]);
    m = std::max(m, 0.5 * (a + b + std::sqrt((b - a) * (b - a) - 2.0 * var * std::log(n.u[j - 1]))));
  }
  return m;
}

struct Moments {
  std::vector<double> sum;
  std::vector<double> sq;
};

// per-sample values averaged over the antithetic pair; fixed chunks, pairwise reduction
template <class F>
Moments accumulate(std::size_t samples, std::size_t dim, F&& sample_fn) {
  const std::size_t n_chunks = (samples + kChunk - 1) / kChunk;
  std::vector<Moments> parts(n_chunks);
  parallel_for(n_chunks, [&](std::size_t c) {
    Moments& m = parts[c];
    m.sum.assign(dim, 0.0);
    m.sq.assign(dim, 0.0);
    std::vector<double> out(dim);
    Noise scratch;
    const std::size_t end = std::min(samples, (c + 1) * kChunk);
    for (std::size_t j = c * kChunk; j < end; ++j) {
      sample_fn(j, out, scratch);
      for (std::size_t d = 0; d < dim; ++d) {
        m.sum[d] += out[d];
        m.sq[d] += out[d] * out[d];
      }
    }
  });
  for (std::size_t width = 1; width < n_chunks; width *= 2) {
    for (std::size_t i = 0; i + width < n_chunks; i += 2 * width) {
      for (std::size_t d = 0; d < dim; ++d) {
        parts[i].sum[d] += parts[i + width].sum[d];
        parts[i].sq[d] += parts[i + width].sq[d];
      }
    }
  }
  return parts.empty() ? Moments{std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0)} : parts[0];
}

McEstimate finish(const Moments& m, std::size_t d, std::size_t samples) {
  const double n = static_cast<double>(samples);
  const double mean = m.sum[d] / n;
  const double var = samples > 1 ? std::max(0.0, (m.sq[d] - n * mean * mean) / (n - 1.0)) : 0.0;
  return {mean, std::sqrt(var / n), samples};
}

McEstimate estimate(const Payoff& g, const Path& x, const BachelierMeasure& m, double T, const MCConfig& cfg,
                    const NoiseBank* bank) {
  const double u = T - x.length();
  if (u < -1e-12 * std::max(1.0, T)) throw PathError("conditioning path is longer than the horizon");
  if (u <= 1e-12 * std::max(1.0, T)) return {g(x), 0.0, 1};
  const std::size_t samples = sample_count(cfg);
  if (m.sigma == 0.0) return {g(stop_extend(x, u, T)), 0.0, samples};
  const bool bridge = static_cast<bool>(g.eval_with_max) && m.sigma > 0.0;
  const int passes = cfg.antithetic ? 2 : 1;
  const Moments mom = accumulate(samples, 1, [&](std::size_t j, std::vector<double>& out, Noise& scratch) {
    const Noise* n = &scratch;
    if (bank && j < bank->samples && bank->steps == cfg.steps && (bank->bridge || !bridge)) {
      n = &bank->noise[j];
    } else {
      draw_noise(cfg, j, bridge, scratch);
    }
    double acc = 0.0;
    for (int p = 0; p < passes; ++p) {
      const Path z = build_path(*n, m.sigma, u, 0.0, p == 0 ? 1.0 : -1.0);
      const Path y = concat(x, z);
      if (bridge) {
        acc += g.eval_with_max(y, x.terminal() + bridge_max(z, *n, m.sigma));
      } else {
        acc += g(y);
      }
    }
    out[0] = acc / passes;
  });
  McEstimate e = finish(mom, 0, samples);
  if (!std::isfinite(e.value)) throw NumericalError(fmt::format("non-finite Monte Carlo estimate for {}", g.name));
  return e;
}

bool parses_as_blocks(const Word& a, int& blocks, int& pairs) {
  blocks = pairs = 0;
  for (int i = 0; i < a.size();) {
    if (a.letter(i) == 0) {
      ++blocks;
      ++i;
    } else if (i + 1 < a.size() && a.letter(i + 1) == 1) {
      ++blocks;
      ++pairs;
      i += 2;
    } else {
      return false;
    }
  }
  return true;
}

double path_max(const Path& x) {
  double m = x.start();
  for (double v : x.values()) m = std::max(m, v);
  return m;
}

}  // namespace

Payoff payoff_from(const Functional& f) {
  Payoff g;
  g.name = f.name;
  g.eval = f.eval;
  return g;
}

Functional as_functional(const Payoff& g, double T) {
  Functional f;
  f.name = g.name;
  f.eval = g.eval;
  f.horizon = T;
  return f;
}

std::vector<Path> bachelier_paths(const BachelierMeasure& m, double T, const MCConfig& cfg) {
  if (!(T > 0.0)) throw std::invalid_argument("horizon must be positive");
  const std::size_t samples = sample_count(cfg);
  const int passes = cfg.antithetic ? 2 : 1;
  std::vector<Path> out(cfg.n_paths, Path::point(m.x0));
  parallel_for(samples, [&](std::size_t j) {
    Noise n;
    draw_noise(cfg, j, false, n);
    for (int p = 0; p < passes; ++p) out[j * passes + p] = build_path(n, m.sigma, T, m.x0, p == 0 ? 1.0 : -1.0);
  });
  return out;
}

McEstimate conditioned_expectation(const Payoff& g, const Path& x, const BachelierMeasure& m, double T,
                                   const MCConfig& cfg) {
  return estimate(g, x, m, T, cfg, nullptr);
}

McEstimate mc_price(const Payoff& g, const BachelierMeasure& m, double T, const MCConfig& cfg) {
  return estimate(g, Path::point(m.x0), m, T, cfg, nullptr);
}

Functional price_embed(const Payoff& g, const BachelierMeasure& m, double T, const MCConfig& cfg) {
  const bool bridge = static_cast<bool>(g.eval_with_max) && m.sigma > 0.0;
  std::shared_ptr<const NoiseBank> bank;
  if (m.sigma > 0.0 && sample_count(cfg) * static_cast<std::size_t>(cfg.steps) <= 20'000'000)
    bank = make_bank(cfg, bridge);
  Functional f;
  f.name = fmt::format("iota_Q({}; sigma={})", g.name, m.sigma);
  f.horizon = T;
  f.eval = [g, m, T, cfg, bank](const Path& x) { return estimate(g, x, m, T, cfg, bank.get()).value; };
  return f;
}

ExpectedSignature expected_signature(const BachelierMeasure& m, double T, int K, const MCConfig& cfg) {
  if (!(T > 0.0)) throw std::invalid_argument("horizon must be positive");
  const std::size_t samples = sample_count(cfg);
  const std::size_t dim = word_count(K);
  const int passes = cfg.antithetic ? 2 : 1;
  const Moments mom = accumulate(samples, dim, [&](std::size_t j, std::vector<double>& out, Noise& n) {
    draw_noise(cfg, j, false, n);
    std::fill(out.begin(), out.end(), 0.0);
    for (int p = 0; p < passes; ++p) {
      const Signature s = signature(build_path(n, m.sigma, T, m.x0, p == 0 ? 1.0 : -1.0), K);
      for (std::size_t d = 0; d < dim; ++d) out[d] += s.at_rank(d) / passes;
    }
  });
  ExpectedSignature e{Signature(K, m.x0), std::vector<double>(dim)};
  for (std::size_t d = 0; d < dim; ++d) {
    const McEstimate est = finish(mom, d, samples);
    e.mean.coords()[d] = est.value;
    e.std_error[d] = est.std_error;
  }
  return e;
}

Signature expected_signature_exact(double sigma, double T, int K) {
  Signature s(K);
  for (const Word& a : enumerate_words(K)) {
    int blocks = 0, pairs = 0;
    if (!parses_as_blocks(a, blocks, pairs)) continue;
    s.at(a) = std::pow(T, blocks) * std::pow(0.5 * sigma * sigma, pairs) / std::tgamma(blocks + 1.0);
  }
  return s;
}

SigPriceReport sig_price(const Payoff& g, double sigma_coeff, int K, const BachelierMeasure& pricing, double T,
                         const MCConfig& coeff_cfg, const MCConfig& price_cfg, const DiffConfig& dcfg) {
  if (K < 0) throw std::invalid_argument("sig_price needs K >= 0");
  const Functional f = price_embed(g, {sigma_coeff, pricing.x0}, T, coeff_cfg);
  const Path base = Path::point(pricing.x0);
  SigPriceReport r;
  r.coefficients = derivative_table(f, base, K, dcfg);
  if (K >= 1) r.kink_suspect = delta_x_checked(f, base, dcfg).kink_suspect;
  const auto words = enumerate_words(K);
  std::vector<double> c(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) c[i] = r.coefficients[words[i]];

  const std::size_t samples = sample_count(price_cfg);
  const int passes = price_cfg.antithetic ? 2 : 1;
  const std::size_t dim = words.size() + 1;
  const Moments mom = accumulate(samples, dim, [&](std::size_t j, std::vector<double>& out, Noise& n) {
    draw_noise(price_cfg, j, false, n);
    std::fill(out.begin(), out.end(), 0.0);
    for (int p = 0; p < passes; ++p) {
      const Signature s = signature(build_path(n, pricing.sigma, T, pricing.x0, p == 0 ? 1.0 : -1.0), K);
      for (std::size_t i = 0; i < words.size(); ++i) {
        const double v = s.at_rank(i) / passes;
        out[i] += v;
        out.back() += c[i] * v;
      }
    }
  });
  const McEstimate total = finish(mom, dim - 1, samples);
  r.price = total.value;
  r.std_error = total.std_error;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const double es = finish(mom, i, samples).value;
    r.terms.push_back({words[i], c[i], es, c[i] * es});
  }
  return r;
}

double lookback_oracle(double t, double x, double m_run, double sigma, double T, double x0) {
  if (m_run < x) throw std::invalid_argument("running maximum below the current value");
  if (t > T) throw std::invalid_argument("time beyond the horizon");
  if (!(sigma > 0.0)) throw std::invalid_argument("lookback oracle needs sigma > 0");
  const double s = sigma * std::sqrt(T - t);
  if (s == 0.0) return m_run - x0;
  const double d = (m_run - x) / s;
  return x - x0 + (m_run - x) * (2.0 * norm_cdf(d) - 1.0) + 2.0 * s * norm_pdf(d);
}

Path scale_path(const Path& x, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("scale must be positive");
  std::vector<double> t(x.times().begin(), x.times().end());
  std::vector<double> v(x.values().begin(), x.values().end());
  const double x0 = x.start();
  for (auto& e : t) e *= lambda;
  for (auto& e : v) e = x0 + lambda * (e - x0);
  return Path(std::move(t), std::move(v));
}

HedgeResult hedge_error(const Functional& g, const DerivTable& coeffs, const Path& x, int K) {
  if (K < 1) throw std::invalid_argument("hedge_error needs K >= 1");
  const auto words = enumerate_words(K - 1);
  auto error_on = [&](const Path& p) {
    const Signature s = signature(p, K - 1);
    double phi = 0.0;
    for (const Word& a : words) phi += coeffs[a] * s[a];
    return g(p) - phi;
  };
  HedgeResult r;
  r.error = error_on(x);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (double lambda : {1.0, 0.5, 0.25, 0.125}) {
    const double e = lambda == 1.0 ? r.error : error_on(scale_path(x, lambda));
    r.profile.emplace_back(lambda, e);
    if (e == 0.0) continue;
    const double lx = std::log2(lambda), ly = std::log2(std::abs(e));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  r.slope = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
  return r;
}

Payoff lookback_payoff() {
  Payoff g;
  g.name = "lookback";
  g.eval = [](const Path& x) { return path_max(x) - x.start(); };
  g.eval_with_max = [](const Path& x, double extra) { return std::max(path_max(x), extra) - x.start(); };
  g.closed_form = [](const BachelierMeasure& m, double T) { return lookback_oracle(0.0, m.x0, m.x0, m.sigma, T, m.x0); };
  return g;
}

Payoff soft_lookback_payoff(double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("soft-max temperature must be positive");
  Payoff g;
  g.name = fmt::format("lookback_soft({})", tau);
  g.eval = [tau](const Path& x) {
    const double T = x.length();
    const double top = path_max(x);
    if (T <= 0.0) return x.terminal() - x.start();
    const auto t = x.times();
    const auto v = x.values();
    double acc = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
      const double h = t[i] - t[i - 1];
      if (h <= 0.0) continue;
      const double hi = std::max(v[i], v[i - 1]);
      const double d = std::abs(v[i] - v[i - 1]) / tau;
      const double mean = d < 1e-12 ? 1.0 : -std::expm1(-d) / d;
      acc += h * std::exp((hi - top) / tau) * mean;
    }
    return tau * std::log(acc / T) + top - x.start();
  };
  return g;
}

Payoff asian_payoff() {
  Payoff g;
  g.name = "asian";
  g.eval = [](const Path& x) {
    if (x.length() <= 0.0) return 0.0;
    return std::max(0.0, integral_of_increment(x) / x.length());
  };
  g.closed_form = [](const BachelierMeasure& m, double T) {
    return m.sigma * std::sqrt(T / (6.0 * std::numbers::pi));
  };
  return g;
}

Payoff call_payoff(double strike) {
  Payoff g;
  g.name = strike == 0.0 ? "call" : fmt::format("call({})", strike);
  g.eval = [strike](const Path& x) { return std::max(0.0, x.terminal() - x.start() - strike); };
  g.closed_form = [strike](const BachelierMeasure& m, double T) {
    const double s = m.sigma * std::sqrt(T);
    if (s == 0.0) return std::max(0.0, -strike);
    return -strike * norm_cdf(-strike / s) + s * norm_pdf(strike / s);
  };
  return g;
}

std::map<std::string, Payoff> payoff_library() {
  std::map<std::string, Payoff> lib;
  auto add = [&](std::string key, Payoff g) { lib.emplace(std::move(key), std::move(g)); };
  add("lookback", lookback_payoff());
  Payoff soft = soft_lookback_payoff(0.01);
  soft.name = "lookback_soft";
  add("lookback_soft", soft);
  add("asian", asian_payoff());
  add("call", call_payoff());

  Payoff terminal = payoff_from(terminal_value());
  terminal.closed_form = [](const BachelierMeasure& m, double) { return m.x0; };
  add("terminal", terminal);

  Payoff square;
  square.name = "square";
  square.eval = [](const Path& x) { return x.terminal() * x.terminal(); };
  square.closed_form = [](const BachelierMeasure& m, double T) { return m.x0 * m.x0 + m.sigma * m.sigma * T; };
  add("square", square);

  Payoff integral;
  integral.name = "integral";
  integral.eval = [](const Path& x) { return integral_of_increment(x) + x.length() * x.start(); };
  integral.closed_form = [](const BachelierMeasure& m, double T) { return m.x0 * T; };
  add("integral", integral);

  Payoff exp_int = payoff_from(exp_affine(0.0, 1.0));
  exp_int.name = "exp_integral";
  exp_int.closed_form = [](const BachelierMeasure& m, double T) {
    return std::exp(m.sigma * m.sigma * T * T * T / 6.0);
  };
  add("exp_integral", exp_int);

  Payoff sq_int;
  sq_int.name = "squared_integral";
  sq_int.eval = [](const Path& x) {
    const double a = integral_of_increment(x) + x.length() * x.start();
    return a * a;
  };
  sq_int.closed_form = [](const BachelierMeasure& m, double T) {
    return m.x0 * m.x0 * T * T + m.sigma * m.sigma * T * T * T / 3.0;
  };
  add("squared_integral", sq_int);
  return lib;
}

}  // namespace sigtaylor
