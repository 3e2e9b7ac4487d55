#pragma once

#include <span>
#include <vector>

#include "sigtaylor/path.hpp"
#include "sigtaylor/words.hpp"

namespace sigtaylor {

/// Truncated signature {S_a : |a| <= depth} of a time-augmented path.
///
/// Coordinates are stored flat, indexed by the graded lexicographic rank of
/// the word. Letter 0 integrates against dt, letter 1 against dx - x_0, and
/// the last letter is the outermost integral: S_{b0} = int S_b ds,
/// S_{b1} = int S_b o dx.
class Signature {
 public:
  static constexpr int kMaxDepth = 12;

  /// Signature of the length-zero path (1 on the empty word, 0 elsewhere).
  explicit Signature(int depth, double base = 0.0);

  int depth() const { return depth_; }
  double length() const { return length_; }
  double base() const { return base_; }
  /// x_t - x_0
  double increment() const { return coords_.size() > 2 ? coords_[2] : 0.0; }

  double operator[](const Word& w) const;
  double& at(const Word& w);
  double at_rank(std::size_t r) const { return coords_[r]; }
  std::span<const double> coords() const { return coords_; }
  std::span<double> coords() { return coords_; }

  /// Drops coordinates above `depth`.
  Signature truncate(int depth) const;

 private:
  friend Signature segment_signature(double dt, double dx, int depth, double base);
  friend Signature chen_concat(const Signature& a, const Signature& b);
  friend Signature signature(const Path& x, int depth);
  friend Signature signature_strat(const Path& x, int depth);
  int depth_;
  double length_ = 0.0;
  double base_;
  std::vector<double> coords_;
};

/// Exact signature of one linear segment: dt^{|a|_0} dx^{|a|_1} / |a|!.
Signature segment_signature(double dt, double dx, int depth, double base = 0.0);

/// coords[a] = sum over a = bc of A[b] B[c].
Signature chen_concat(const Signature& a, const Signature& b);

/// Exact signature of a piecewise-linear path (segments folded by Chen's
/// identity). A jump stamp is treated as a segment of zero duration, i.e. the
/// jump is traversed linearly in space at frozen time.
Signature signature(const Path& x, int depth);

/// Pathwise Stratonovich quadrature: every level is integrated on the grid by
/// the trapezoid rule against dt or dx. Throws PathError on jumps.
Signature signature_strat(const Path& x, int depth);

/// S_a(X_u) at every grid time u of x.
std::vector<double> running_coordinate(const Path& x, const Word& a);

/// Iterated Ito integral J_k = t^{k/2} He_k(x / sqrt t) / k!.
double ito_iterated(double t, double x, int k);

/// sum over words with 2|a|_0 + |a|_1 = k of (-2)^{-|a|_0} a.
WordPoly hermite_combination(int k);

/// Evaluates a word polynomial on a signature with T = sig.length().
double evaluate(const WordPoly& p, const Signature& sig);
/// Same with an explicit value for the horizon symbol.
double evaluate(const WordPoly& p, const Signature& sig, double horizon);

/// Kernel of S_a as a k-fold Stratonovich integral, a = 0^{g_0} 1 0^{g_1} 1 ... 1 0^{g_k}.
struct IveKernel {
  Word word;
  std::vector<int> gaps;
  double horizon;

  IveKernel(const Word& a, double horizon);
  int order() const { return static_cast<int>(gaps.size()) - 1; }
};

/// prod_l (t_{l+1} - t_l)^{g_l} / g_l! with t_0 = 0, t_{k+1} = T.
double ive_kernel_eval(const IveKernel& kern, std::span<const double> times);

/// Nested trapezoid quadrature of the kernel against dx in every slot.
/// The path must have length equal to the kernel horizon and no jumps.
double iterated_strat_with_kernel(const IveKernel& kern, const Path& x);

}  // namespace sigtaylor
