#include "sigtaylor/signature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace sigtaylor {

namespace {

inline std::size_t rank_of(std::uint32_t bits, int len) { return ((std::size_t{1} << len) - 1) + bits; }
inline std::uint32_t low_bits(std::uint32_t bits, int m) { return m == 0 ? 0U : bits & ((1U << m) - 1U); }

double pow_fact(double u, int g) {
  double r = 1.0;
  for (int i = 1; i <= g; ++i) r *= u / i;
  return r;
}

void check_depth(int depth) {
  if (depth < 0 || depth > Signature::kMaxDepth)
    throw std::invalid_argument(fmt::format("signature depth {} outside [0, {}]", depth, Signature::kMaxDepth));
}

constexpr int kTab = Signature::kMaxDepth + 1;
using SegmentTable = std::array<std::array<double, kTab>, kTab>;

// table[c0][c1] = dt^c0 dx^c1 / (c0 + c1)!
SegmentTable segment_table(double dt, double dx, int depth) {
  SegmentTable t{};
  double p0 = 1.0;
  for (int c0 = 0; c0 <= depth; ++c0) {
    double v = p0;
    for (int c1 = 0; c0 + c1 <= depth; ++c1) {
      double f = v;
      for (int i = 2; i <= c0 + c1; ++i) f /= i;
      t[c0][c1] = f;
      v *= dx;
    }
    p0 *= dt;
  }
  return t;
}

// coords <- coords (x) exp(dt e0 + dx e1), longest words first so prefixes are still old.
void append_segment(std::vector<double>& coords, int depth, double dt, double dx) {
  const auto tab = segment_table(dt, dx, depth);
  for (int n = depth; n >= 1; --n) {
    for (std::uint32_t b = 0; b < (1U << n); ++b) {
      double acc = coords[rank_of(b, n)];
      for (int m = 1; m <= n; ++m) {
        const int c1 = __builtin_popcount(low_bits(b, m));
        acc += coords[rank_of(b >> m, n - m)] * tab[m - c1][c1];
      }
      coords[rank_of(b, n)] = acc;
    }
  }
}

}  // namespace

Signature::Signature(int depth, double base) : depth_(depth), base_(base) {
  check_depth(depth);
  coords_.assign(word_count(depth), 0.0);
  coords_[0] = 1.0;
}

double Signature::operator[](const Word& w) const {
  if (w.size() > depth_) throw std::out_of_range(fmt::format("word {} exceeds depth {}", w.str(), depth_));
  return coords_[w.rank()];
}

double& Signature::at(const Word& w) {
  if (w.size() > depth_) throw std::out_of_range(fmt::format("word {} exceeds depth {}", w.str(), depth_));
  return coords_[w.rank()];
}

Signature Signature::truncate(int depth) const {
  if (depth > depth_) throw std::invalid_argument("cannot truncate to a larger depth");
  Signature s(*this);
  s.depth_ = depth;
  s.coords_.resize(word_count(depth));
  return s;
}

Signature segment_signature(double dt, double dx, int depth, double base) {
  if (dt < 0.0) throw std::invalid_argument("segment duration must be >= 0");
  Signature s(depth, base);
  s.length_ = dt;
  const auto tab = segment_table(dt, dx, depth);
  for (int n = 1; n <= depth; ++n)
    for (std::uint32_t b = 0; b < (1U << n); ++b) {
      const int c1 = __builtin_popcount(b);
      s.coords_[rank_of(b, n)] = tab[n - c1][c1];
    }
  return s;
}

Signature chen_concat(const Signature& a, const Signature& b) {
  if (a.depth() != b.depth()) throw std::invalid_argument("chen_concat: depth mismatch");
  Signature r(a.depth(), a.base());
  r.length_ = a.length() + b.length();
  for (int n = 1; n <= a.depth(); ++n)
    for (std::uint32_t w = 0; w < (1U << n); ++w) {
      double acc = 0.0;
      for (int m = 0; m <= n; ++m) acc += a.coords_[rank_of(w >> m, n - m)] * b.coords_[rank_of(low_bits(w, m), m)];
      r.coords_[rank_of(w, n)] = acc;
    }
  return r;
}

Signature signature(const Path& x, int depth) {
  check_depth(depth);
  Signature s(depth, x.start());
  s.length_ = x.length();
  const auto t = x.times();
  const auto v = x.values();
  for (std::size_t i = 1; i < x.size(); ++i) append_segment(s.coords_, depth, t[i] - t[i - 1], v[i] - v[i - 1]);
  return s;
}

Signature signature_strat(const Path& x, int depth) {
  check_depth(depth);
  if (x.has_jumps()) throw PathError("signature_strat: path has jumps");
  const auto t = x.times();
  const auto v = x.values();
  const std::size_t n = x.size();
  std::vector<std::vector<double>> a(word_count(depth));
  a[0].assign(n, 1.0);
  for (std::size_t r = 1; r < a.size(); ++r) {
    const Word w = Word::from_rank(r);
    const auto& inner = a[w.drop_back().rank()];
    auto& cur = a[r];
    cur.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
      const double d = w.back() == 0 ? t[i] - t[i - 1] : v[i] - v[i - 1];
      cur[i] = cur[i - 1] + 0.5 * (inner[i - 1] + inner[i]) * d;
    }
  }
  Signature out(depth, x.start());
  out.length_ = x.length();
  for (std::size_t r = 1; r < a.size(); ++r) out.coords_[r] = a[r].back();
  return out;
}

std::vector<double> running_coordinate(const Path& x, const Word& a) {
  const int depth = a.size();
  check_depth(depth);
  std::vector<double> c(word_count(depth), 0.0);
  c[0] = 1.0;
  std::vector<double> out;
  out.reserve(x.size());
  out.push_back(c[a.rank()]);
  const auto t = x.times();
  const auto v = x.values();
  for (std::size_t i = 1; i < x.size(); ++i) {
    append_segment(c, depth, t[i] - t[i - 1], v[i] - v[i - 1]);
    out.push_back(c[a.rank()]);
  }
  return out;
}

double ito_iterated(double t, double x, int k) {
  if (k < 0) throw std::invalid_argument("ito_iterated: k must be >= 0");
  if (t < 0.0) throw std::invalid_argument("ito_iterated: t must be >= 0");
  if (k == 0) return 1.0;
  if (t == 0.0) return 0.0;
  // P_k(t, x) = t^{k/2} He_k(x / sqrt t): P_{k+1} = x P_k - k t P_{k-1}
  double p0 = 1.0, p1 = x;
  for (int j = 1; j < k; ++j) {
    const double p2 = x * p1 - j * t * p0;
    p0 = p1;
    p1 = p2;
  }
  for (int j = 2; j <= k; ++j) p1 /= j;
  return p1;
}

WordPoly hermite_combination(int k) {
  WordPoly p;
  for (const Word& w : words_with_weight(k)) p.add(w, std::pow(-2.0, -w.count0()));
  return p;
}

double evaluate(const WordPoly& p, const Signature& sig) { return evaluate(p, sig, sig.length()); }

double evaluate(const WordPoly& p, const Signature& sig, double horizon) {
  return p.evaluate([&](const Word& w) { return sig[w]; }, horizon);
}

IveKernel::IveKernel(const Word& a, double horizon_) : word(a), horizon(horizon_) {
  int g = 0;
  for (int i = 0; i < a.size(); ++i) {
    if (a.letter(i) == 0) {
      ++g;
    } else {
      gaps.push_back(g);
      g = 0;
    }
  }
  gaps.push_back(g);
}

double ive_kernel_eval(const IveKernel& kern, std::span<const double> times) {
  const int k = kern.order();
  if (static_cast<int>(times.size()) != k)
    throw std::invalid_argument(fmt::format("kernel of {} takes {} times, got {}", kern.word.str(), k, times.size()));
  double prev = 0.0, r = 1.0;
  for (int l = 0; l <= k; ++l) {
    const double next = l < k ? times[l] : kern.horizon;
    if (next < prev) throw std::invalid_argument("kernel times must be ordered in [0, T]");
    r *= pow_fact(next - prev, kern.gaps[l]);
    prev = next;
  }
  return r;
}

double iterated_strat_with_kernel(const IveKernel& kern, const Path& x) {
  if (x.has_jumps()) throw PathError("iterated_strat_with_kernel: path has jumps");
  if (std::abs(x.length() - kern.horizon) > 1e-9 * std::max(1.0, kern.horizon))
    throw PathError("iterated_strat_with_kernel: path length differs from the kernel horizon");
  const int k = kern.order();
  const auto s = x.times();
  const auto v = x.values();
  const std::size_t n = x.size();
  if (k == 0) return pow_fact(kern.horizon, kern.gaps[0]);

  std::vector<double> b(n), next(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = pow_fact(s[i], kern.gaps[0]);
  for (int l = 1; l <= k; ++l) {
    const int g = kern.gaps[l];
    const std::size_t first = l == k ? n - 1 : 0;
    for (std::size_t i = first; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t m = 1; m <= i; ++m)
        acc += 0.5 * (b[m - 1] * pow_fact(s[i] - s[m - 1], g) + b[m] * pow_fact(s[i] - s[m], g)) * (v[m] - v[m - 1]);
      next[i] = acc;
    }
    std::swap(b, next);
  }
  return b[n - 1];
}

}  // namespace sigtaylor
