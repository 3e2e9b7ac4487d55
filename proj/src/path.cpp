#include "sigtaylor/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sigtaylor {

namespace {

constexpr double kTimeSlack = 1e-12;

bool exceeds(double t, double bound) { return t > bound + kTimeSlack * std::max(1.0, std::abs(bound)); }

}  // namespace

Path::Path(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.empty()) throw PathError("path needs at least one sample");
  if (times_.size() != values_.size()) throw PathError("times and values differ in length");
  if (times_.front() != 0.0) throw PathError("path must start at time 0");
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i]) || !std::isfinite(values_[i]))
      throw PathError("non-finite sample at index " + std::to_string(i));
    if (i == 0) continue;
    if (times_[i] < times_[i - 1]) throw PathError("times must be non-decreasing");
    if (i >= 2 && times_[i] == times_[i - 1] && times_[i - 1] == times_[i - 2])
      throw PathError("a time stamp may appear at most twice");
  }
}

Path Path::point(double x0) { return Path({0.0}, {x0}); }

Path Path::constant(double x, double length, std::size_t segments) { return line(x, x, length, segments); }

Path Path::line(double x0, double x1, double length, std::size_t segments) {
  if (length < 0.0) throw PathError("negative path length");
  if (length == 0.0) return point(x0);
  segments = std::max<std::size_t>(segments, 1);
  std::vector<double> t(segments + 1), v(segments + 1);
  for (std::size_t i = 0; i <= segments; ++i) {
    const double w = static_cast<double>(i) / static_cast<double>(segments);
    t[i] = length * w;
    v[i] = x0 + (x1 - x0) * w;
  }
  t.back() = length;
  v.back() = x1;
  return Path(std::move(t), std::move(v));
}

bool Path::has_jumps() const {
  for (std::size_t i = 1; i < times_.size(); ++i)
    if (times_[i] == times_[i - 1]) return true;
  return false;
}

std::vector<std::size_t> Path::jump_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < times_.size(); ++i)
    if (times_[i] == times_[i - 1]) out.push_back(i - 1);
  return out;
}

double Path::value_at(double s) const {
  if (s <= 0.0) {
    // a jump at time 0 is visible immediately
    return (times_.size() > 1 && times_[1] == 0.0) ? values_[1] : values_[0];
  }
  if (s >= times_.back()) return values_.back();
  auto it = std::upper_bound(times_.begin(), times_.end(), s);
  const auto hi = static_cast<std::size_t>(it - times_.begin());
  const std::size_t lo = hi - 1;
  if (times_[lo] == s) return values_[lo];
  const double w = (s - times_[lo]) / (times_[hi] - times_[lo]);
  return values_[lo] + w * (values_[hi] - values_[lo]);
}

double Path::left_limit(double s) const {
  if (s <= 0.0) return values_[0];
  if (s > times_.back()) return values_.back();
  auto it = std::lower_bound(times_.begin(), times_.end(), s);
  const auto hi = static_cast<std::size_t>(it - times_.begin());
  if (times_[hi] == s) return values_[hi];
  const std::size_t lo = hi - 1;
  const double w = (s - times_[lo]) / (times_[hi] - times_[lo]);
  return values_[lo] + w * (values_[hi] - values_[lo]);
}

Path concat(const Path& x, const Path& z_in, std::optional<double> horizon) {
  const double s = x.length();
  Path z = z_in;
  if (horizon && exceeds(s + z.length(), *horizon)) z = prefix(z_in, std::max(0.0, *horizon - s));
  if (z.size() == 1) return x;
  std::vector<double> t(x.times().begin(), x.times().end());
  std::vector<double> v(x.values().begin(), x.values().end());
  const double offset = x.terminal() - z.start();
  for (std::size_t i = 1; i < z.size(); ++i) {
    t.push_back(s + z.times()[i]);
    v.push_back(z.values()[i] + offset);
  }
  return Path(std::move(t), std::move(v));
}

Path stop_extend(const Path& x, double dt, std::optional<double> horizon) {
  if (!(dt >= 0.0)) throw PathError("flat extension needs dt >= 0");
  if (horizon && exceeds(x.length() + dt, *horizon)) throw PathError("flat extension exceeds the horizon");
  if (dt == 0.0) return x;
  std::vector<double> t(x.times().begin(), x.times().end());
  std::vector<double> v(x.values().begin(), x.values().end());
  const std::size_t n = t.size();
  const bool flat_tail = n >= 2 && t[n - 1] > t[n - 2] && v[n - 1] == v[n - 2];
  if (flat_tail) {
    t.back() += dt;
  } else {
    t.push_back(t.back() + dt);
    v.push_back(v.back());
  }
  return Path(std::move(t), std::move(v));
}

Path bump(const Path& x, double h) {
  if (h == 0.0) return x;
  std::vector<double> t(x.times().begin(), x.times().end());
  std::vector<double> v(x.values().begin(), x.values().end());
  const std::size_t n = t.size();
  if (n >= 2 && t[n - 1] == t[n - 2]) {
    v.back() += h;
    if (v.back() == v[n - 2]) {
      t.pop_back();
      v.pop_back();
    }
  } else {
    t.push_back(t.back());
    v.push_back(v.back() + h);
  }
  return Path(std::move(t), std::move(v));
}

Path bump_to(const Path& x, double eps) { return bump(x, eps - x.terminal()); }

Path restrict(const Path& x, double s, double t) {
  if (s < 0.0 || t < s || exceeds(t, x.length())) throw PathError("restriction window outside the path");
  t = std::min(t, x.length());
  std::vector<double> tt{0.0};
  std::vector<double> vv{s == 0.0 ? x.start() : x.value_at(s)};
  if (s == 0.0 && x.size() > 1 && x.times()[1] == 0.0) {
    // keep a jump at time 0
    tt.push_back(0.0);
    vv.push_back(x.values()[1]);
  }
  if (t == s) return Path(std::move(tt), std::move(vv));
  const auto times = x.times();
  const auto values = x.values();
  bool hit_end = false;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] <= s) continue;
    if (times[i] < t) {
      tt.push_back(times[i] - s);
      vv.push_back(values[i]);
    } else if (times[i] == t) {
      tt.push_back(t - s);
      vv.push_back(values[i]);
      hit_end = true;
    } else {
      break;
    }
  }
  if (!hit_end) {
    tt.push_back(t - s);
    vv.push_back(x.value_at(t));
  }
  return Path(std::move(tt), std::move(vv));
}

Path prefix(const Path& x, double t) { return restrict(x, 0.0, t); }

Path head(const Path& x, std::size_t last) {
  if (last >= x.size()) throw PathError("head index outside the path");
  return Path(std::vector<double>(x.times().begin(), x.times().begin() + static_cast<std::ptrdiff_t>(last) + 1),
              std::vector<double>(x.values().begin(), x.values().begin() + static_cast<std::ptrdiff_t>(last) + 1));
}

Path reverse_restrict(const Path& x, double t, double s) {
  if (s > t) throw PathError("reverse_restrict needs s <= t");
  for (auto i : x.jump_indices()) {
    const double tj = x.times()[i];
    if (tj > s && tj <= t) throw PathError("time reversal across a jump leaves the cadlag space");
  }
  const Path r = restrict(x, s, t);
  const double len = r.length();
  const std::size_t n = r.size();
  std::vector<double> tt(n), vv(n);
  for (std::size_t i = 0; i < n; ++i) {
    tt[i] = len - r.times()[n - 1 - i];
    vv[i] = r.values()[n - 1 - i];
  }
  tt.front() = 0.0;
  return Path(std::move(tt), std::move(vv));
}

Path parallel_shift(const Path& x, double t, double shift) {
  if (shift == 0.0) return x;
  if (t < 0.0 || exceeds(t, x.length())) throw PathError("shift time outside the path");
  t = std::min(t, x.length());
  const auto times = x.times();
  const auto values = x.values();
  std::vector<double> tt, vv;
  tt.reserve(times.size() + 2);
  vv.reserve(times.size() + 2);
  std::size_t i = 0;
  for (; i < times.size() && times[i] < t; ++i) {
    tt.push_back(times[i]);
    vv.push_back(values[i]);
  }
  if (i < times.size() && times[i] == t) {
    const bool existing_jump = i + 1 < times.size() && times[i + 1] == t;
    tt.push_back(t);
    vv.push_back(values[i]);
    tt.push_back(t);
    vv.push_back((existing_jump ? values[i + 1] : values[i]) + shift);
    i += existing_jump ? 2 : 1;
  } else {
    const double v = x.value_at(t);
    tt.push_back(t);
    vv.push_back(v);
    tt.push_back(t);
    vv.push_back(v + shift);
  }
  for (; i < times.size(); ++i) {
    tt.push_back(times[i]);
    vv.push_back(values[i] + shift);
  }
  return Path(std::move(tt), std::move(vv));
}

Path block_shift(const Path& x, double a, double b, double shift) {
  if (!(a < b)) throw PathError("block shift needs a < b");
  if (a < 0.0 || exceeds(b, x.length())) throw PathError("block shift window outside the path");
  return parallel_shift(parallel_shift(x, a, shift), std::min(b, x.length()), -shift);
}

Path refine(const Path& x, int levels) {
  Path cur = x;
  for (int l = 0; l < levels; ++l) {
    std::vector<double> tt{cur.times()[0]};
    std::vector<double> vv{cur.values()[0]};
    for (std::size_t i = 1; i < cur.size(); ++i) {
      const double t0 = cur.times()[i - 1], t1 = cur.times()[i];
      if (t1 > t0) {
        tt.push_back(0.5 * (t0 + t1));
        vv.push_back(0.5 * (cur.values()[i - 1] + cur.values()[i]));
      }
      tt.push_back(t1);
      vv.push_back(cur.values()[i]);
    }
    cur = Path(std::move(tt), std::move(vv));
  }
  return cur;
}

std::vector<double> PartitionSeq::level(int n) const {
  if (n < min_level || n > max_level) throw std::out_of_range("partition level outside the declared range");
  const long intervals = scheme == PartitionScheme::dyadic ? (1L << n) : static_cast<long>(n);
  if (intervals < 1) throw std::out_of_range("partition level has no intervals");
  std::vector<double> pts(static_cast<std::size_t>(intervals) + 1);
  for (long k = 0; k <= intervals; ++k)
    pts[static_cast<std::size_t>(k)] = horizon * static_cast<double>(k) / static_cast<double>(intervals);
  pts.back() = horizon;
  return pts;
}

double PartitionSeq::mesh(int n) const {
  const double intervals = scheme == PartitionScheme::dyadic ? std::ldexp(1.0, n) : static_cast<double>(n);
  return horizon / intervals;
}

std::vector<QvSample> quadratic_variation(const Path& x, const PartitionSeq& seq, int level) {
  std::vector<double> pts = seq.level(level);
  const double len = x.length();
  std::vector<QvSample> out;
  out.push_back({0.0, 0.0});
  double acc = 0.0;
  double prev = x.value_at(0.0);
  for (std::size_t k = 1; k < pts.size(); ++k) {
    const double s = std::min(pts[k], len);
    const double v = x.value_at(s);
    acc += (v - prev) * (v - prev);
    prev = v;
    out.push_back({s, acc});
    if (pts[k] >= len) break;
  }
  return out;
}

double lambda_distance(const Path& x_in, const Path& y_in) {
  const bool swap = x_in.length() < y_in.length();
  const Path& x = swap ? y_in : x_in;
  const Path& y = swap ? x_in : y_in;
  const double t = x.length(), s = y.length();
  std::vector<double> grid(x.times().begin(), x.times().end());
  grid.insert(grid.end(), y.times().begin(), y.times().end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  double sup = 0.0;
  for (double u : grid) {
    const double us = std::min(u, s);
    sup = std::max(sup, std::abs(x.value_at(u) - y.value_at(us)));
    const double yl = u <= s ? y.left_limit(us) : y.value_at(s);
    sup = std::max(sup, std::abs(x.left_limit(u) - yl));
  }
  return (t - s) + sup;
}

double sup_norm(const Path& x) {
  double m = 0.0;
  for (double v : x.values()) m = std::max(m, std::abs(v));
  return m;
}

double sup_increment(const Path& x) {
  double m = 0.0;
  for (double v : x.values()) m = std::max(m, std::abs(v - x.start()));
  return m;
}

double lipschitz_seminorm(const Path& x) {
  double m = 0.0;
  const auto t = x.times();
  const auto v = x.values();
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double dv = std::abs(v[i] - v[i - 1]);
    if (t[i] == t[i - 1]) {
      if (dv > 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    m = std::max(m, dv / (t[i] - t[i - 1]));
  }
  return m;
}

double d1_distance(const Path& y_in, const Path& y2_in) {
  const bool swap = y_in.length() < y2_in.length();
  const Path& y = swap ? y2_in : y_in;
  const Path& y2 = swap ? y_in : y2_in;
  const double t = y.length(), s = y2.length();
  std::vector<double> grid(y.times().begin(), y.times().end());
  grid.insert(grid.end(), y2.times().begin(), y2.times().end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  double lip = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double a = grid[i - 1], b = grid[i];
    const double da = y.value_at(a) - y2.value_at(std::min(a, s));
    const double db = y.left_limit(b) - y2.left_limit(std::min(b, s));
    lip = std::max(lip, std::abs(db - da) / (b - a));
  }
  return (t - s) + std::abs(y.start() - y2.start()) + lip;
}

}  // namespace sigtaylor
