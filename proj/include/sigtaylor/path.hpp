#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace sigtaylor {

/// Raised when a path (or an operation's arguments) violates the path invariants.
class PathError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A sampled trajectory (t_i, x_i) on [0, t_end].
///
/// Between samples the path is linear. A jump is encoded by two consecutive
/// samples sharing a time stamp; the second one is the post-jump value, so
/// evaluation at a jump time returns the right limit (cadlag convention).
/// A single sample is a path of length zero.
class Path {
 public:
  Path(std::vector<double> times, std::vector<double> values);

  /// Length-zero path sitting at `x0`.
  static Path point(double x0);
  /// Constant path on [0, length] with `segments` equal segments.
  static Path constant(double x, double length, std::size_t segments = 1);
  /// Straight line from x0 to x1 over [0, length].
  static Path line(double x0, double x1, double length, std::size_t segments = 1);

  std::span<const double> times() const { return times_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return times_.size(); }

  double length() const { return times_.back(); }
  double start() const { return values_.front(); }
  double terminal() const { return values_.back(); }

  bool has_jumps() const;
  /// Indices i such that times[i] == times[i + 1].
  std::vector<std::size_t> jump_indices() const;

  /// Right-continuous evaluation; clamps to [0, length].
  double value_at(double s) const;
  /// Left limit x_{s-}; equals value_at(s) away from jumps and at s = 0.
  double left_limit(double s) const;

  bool operator==(const Path&) const = default;

 private:
  std::vector<double> times_;
  std::vector<double> values_;
};

/// X (+) Z: y_r = x_{min(r,s)} + z_{(r-s)+} - z_0. If a horizon is given and the
/// result would be longer, Z is truncated first.
Path concat(const Path& x, const Path& z, std::optional<double> horizon = std::nullopt);

/// Flat extension X_{t,dt}.
Path stop_extend(const Path& x, double dt, std::optional<double> horizon = std::nullopt);

/// Terminal vertical bump X^h (a jump of size h at t_end).
Path bump(const Path& x, double h);
/// X^{(eps)}: terminal value set to eps.
Path bump_to(const Path& x, double eps);

/// X restricted to [s, t], re-based to start at time 0.
Path restrict(const Path& x, double s, double t);
/// Prefix X_t (restriction to [0, t]).
Path prefix(const Path& x, double t);
/// The path made of samples 0..last (distinguishes the two stamps of a jump).
Path head(const Path& x, std::size_t last);
/// u -> x_{t-u} on [0, t-s]; the window must not contain jumps in (s, t].
Path reverse_restrict(const Path& x, double t, double s);

/// Adds `shift` to every value at times >= t, inserting a jump at t. Used for
/// Malliavin-type parallel shifts; at t = 0 the pre-jump start value is kept.
Path parallel_shift(const Path& x, double t, double shift);
/// Adds `shift` on [a, b) (block impulse); jumps are inserted at a and b < length.
Path block_shift(const Path& x, double a, double b, double shift);

/// Pointwise map of the values (times unchanged).
template <class F>
Path map_values(const Path& x, F&& f) {
  std::vector<double> v(x.values().begin(), x.values().end());
  for (auto& e : v) e = f(e);
  return Path(std::vector<double>(x.times().begin(), x.times().end()), std::move(v));
}

/// Inserts the midpoint of every positive-length segment (same path, finer grid).
Path refine(const Path& x, int levels = 1);

// ---- partitions and quadratic variation ----

enum class PartitionScheme { dyadic, uniform };

/// Refining partition sequence of [0, horizon]. Level N has 2^N intervals for
/// the dyadic scheme and N intervals for the uniform one.
struct PartitionSeq {
  PartitionScheme scheme = PartitionScheme::dyadic;
  int min_level = 1;
  int max_level = 20;
  double horizon = 1.0;

  std::vector<double> level(int n) const;
  double mesh(int n) const;
};

struct QvSample {
  double time;
  double value;
};

/// s -> sum over partition points up to s of squared increments, sampled at the
/// level-N partition points that lie in [0, length] plus the terminal time.
std::vector<QvSample> quadratic_variation(const Path& x, const PartitionSeq& seq, int level);

// ---- metrics and seminorms ----

/// d_Lambda(X_t, Y_s) = t - s + sup_{u<=t} |x_u - y_{u^s}|; arguments are swapped
/// when the first path is shorter.
double lambda_distance(const Path& x, const Path& y);
double sup_norm(const Path& x);
/// sup |x_s - x_0|.
double sup_increment(const Path& x);
/// Max slope over positive-length segments; infinite if the path jumps.
double lipschitz_seminorm(const Path& x);
/// d_1(Y_t, Y'_s) = t - s + |y_0 - y'_0| + [Y_t - Y'_{s,t-s}]_Lip.
double d1_distance(const Path& y, const Path& y2);

}  // namespace sigtaylor
