#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sigtaylor/expansion.hpp"
#include "sigtaylor/sampling.hpp"
#include "sigtaylor/signature.hpp"
#include "support.hpp"

using namespace sigtaylor;
using testutil::rel_err;

namespace {

Word w(const char* s) { return Word::parse(s); }

DiffConfig fd_only() {
  DiffConfig c;
  c.use_exact = false;
  return c;
}

Functional with_horizon(Functional f, double T) {
  f.horizon = T;
  return f;
}

Functional exp_increment() {
  return increment_function("exp_increment", [](int, double y) { return std::exp(y); });
}

// (int_0^T x_s ds)^2
Functional squared_integral(double T) {
  Functional f;
  f.name = "squared_integral";
  f.horizon = T;
  f.eval = [](const Path& x) {
    const double a = integral_of_increment(x) + x.length() * x.start();
    return a * a;
  };
  return f;
}

// int_0^T x_s ds * x_T
Functional integral_times_terminal(double T) {
  Functional f;
  f.name = "integral_times_terminal";
  f.horizon = T;
  f.eval = [](const Path& x) { return (integral_of_increment(x) + x.length() * x.start()) * x.terminal(); };
  return f;
}

}  // namespace

TEST_CASE("fte is exact on the span of the signature") {
  auto rng = make_stream(21, 0);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::map<Word, double> coeffs;
    for (const Word& a : enumerate_words(4)) coeffs[a] = u(rng);
    const Functional f = signature_combination(coeffs);
    const Path x = random_lipschitz_path(rng, 15, 0.5, 1.5, 0.2);
    const Path y = random_lipschitz_path(rng, 15, 0.6, 1.5, -0.4);
    const ExpansionReport r = fte(f, x, y, 5);
    REQUIRE(r.exact.has_value());
    CHECK(std::abs(*r.remainder) <= 1e-9 * std::max(1.0, std::abs(*r.exact)));
    double sum = 0.0;
    for (const auto& t : r.terms) sum += t.product;
    CHECK(sum == doctest::Approx(r.truncation).epsilon(1e-14));
    CHECK(r.terms.size() == word_count(4));
  }
}

TEST_CASE("fte of a signature coordinate at K > |a| has zero remainder") {
  auto rng = make_stream(22, 0);
  const Functional f = signature_coordinate(w("0110"));
  for (int trial = 0; trial < 5; ++trial) {
    const Path x = random_lipschitz_path(rng, 10, 0.4, 2.0);
    const Path y = random_lipschitz_path(rng, 10, 0.7, 2.0);
    CHECK(std::abs(*fte(f, x, y, 5).remainder) <= 1e-12);
    CHECK(std::abs(*fte(f, x, y, 7).remainder) <= 1e-12);
  }
}

TEST_CASE("classical Taylor terms for functions of the increment") {
  auto rng = make_stream(23, 0);
  const Functional f = exp_increment();
  const Path x = random_lipschitz_path(rng, 8, 0.3, 1.0, 0.5);
  const Path y = random_lipschitz_path(rng, 8, 0.4, 1.0, 0.0);
  const double base = std::exp(x.terminal() - x.start());
  const double dy = y.terminal() - y.start();
  const ExpansionReport r = fte(f, x, y, 6);
  for (const auto& t : r.terms) {
    if (t.word.count0() > 0) {
      CHECK(t.coefficient == 0.0);
    } else {
      const int k = t.word.size();
      CHECK(t.product == doctest::Approx(base * std::pow(dy, k) / std::tgamma(k + 1.0)).epsilon(1e-12));
    }
  }
  double taylor = 0.0;
  for (int k = 0; k < 6; ++k) taylor += base * std::pow(dy, k) / std::tgamma(k + 1.0);
  CHECK(r.truncation == doctest::Approx(taylor).epsilon(1e-12));
}

TEST_CASE("sine integral example around the flat path at pi/4") {
  auto rng = make_stream(24, 0);
  const Functional f = sine_integral();
  const Path x = Path::point(std::numbers::pi / 4);
  for (const DiffConfig& cfg : {DiffConfig{}, fd_only()}) {
    for (int trial = 0; trial < 5; ++trial) {
      const Path y = random_lipschitz_path(rng, 12, 0.3, 1.0);
      const ExpansionReport r = fte(f, x, y, 3, cfg);
      const Signature s = signature(y, 2);
      CHECK(r.truncation == doctest::Approx(y.length() + s[w("10")]).epsilon(1e-6));
      for (const auto& t : r.terms) {
        if (t.word == w("0") || t.word == w("10")) {
          CHECK(t.coefficient == doctest::Approx(1.0).epsilon(1e-6));
        } else {
          CHECK(std::abs(t.coefficient) <= 1e-6);
        }
      }
    }
  }
}

TEST_CASE("maclaurin examples") {
  auto rng = make_stream(25, 0);
  const Path x = random_lipschitz_path(rng, 10, 0.5, 2.0, 0.3);

  const ExpansionReport r = maclaurin(signature_coordinate(w("011")), x, 4);
  for (const auto& t : r.terms) CHECK(t.coefficient == (t.word == w("011") ? 1.0 : 0.0));
  CHECK(r.truncation == doctest::Approx(signature(x, 3)[w("011")]).epsilon(1e-13));

  for (const DiffConfig& cfg : {DiffConfig{}, fd_only()}) {
    const ExpansionReport c = maclaurin(increment_power(3), x, 4, cfg);
    for (const auto& t : c.terms) {
      const double expect = t.word == w("111") ? 6.0 : 0.0;
      CHECK(t.coefficient == doctest::Approx(expect).scale(1.0).epsilon(1e-5));
    }
  }

  const Functional e = exp_affine(0.7, -0.4);
  const ExpansionReport k1 = maclaurin(e, x, 1);
  CHECK(k1.terms.size() == 1);
  CHECK(k1.truncation == e(Path::point(x.start())));
}

TEST_CASE("backward expansion") {
  auto rng = make_stream(26, 0);
  const Path x = random_lipschitz_path(rng, 20, 1.0, 2.0, 0.1);
  const Functional s1 = signature_coordinate(w("1"));
  const ExpansionReport r = fte_backward(s1, x, 0.35, 0.8, 2);
  CHECK(r.truncation == doctest::Approx(s1(prefix(x, 0.8)) + x.value_at(0.35) - x.value_at(0.8)).epsilon(1e-13));
  CHECK(std::abs(*r.remainder) <= 1e-13);

  const Functional s0 = signature_coordinate(w("0"));
  CHECK(fte_backward(s0, x, 0.35, 0.8, 2).truncation == doctest::Approx(0.35).epsilon(1e-13));

  const Functional e = exp_affine(0.3, 0.8);
  for (int K : {1, 3, 5}) {
    const ExpansionReport same = fte_backward(e, x, 0.6, 0.6, K);
    CHECK(same.truncation == doctest::Approx(e(prefix(x, 0.6))).epsilon(1e-14));
  }

  const Functional s10 = signature_coordinate(w("10"));
  for (int trial = 0; trial < 20; ++trial) {
    const Path p = random_lipschitz_path(rng, 25, 1.0, 2.0, 0.5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    const double scale = lipschitz_seminorm(p) * (b - a) * (b - a) / 2.0;
    for (const DiffConfig& cfg : {DiffConfig{}, fd_only()}) {
      const ExpansionReport br = fte_backward(s10, p, a, b, 3, cfg);
      CHECK(rel_err(br.truncation, *br.exact, scale) <= 1e-6);
    }
  }
}

TEST_CASE("forward then backward returns to the start") {
  auto rng = make_stream(27, 0);
  const Functional f = exp_affine(0.5, 0.3);
  for (int trial = 0; trial < 5; ++trial) {
    const Path x = random_lipschitz_path(rng, 20, 1.0, 1.0);
    const double s = 0.4, t = 0.7;
    const ExpansionReport fwd = fte(f, prefix(x, s), restrict(x, s, t), 7);
    const ExpansionReport bwd = fte_backward(f, x, s, t, 7);
    CHECK(fwd.truncation == doctest::Approx(f(prefix(x, t))).epsilon(1e-7));
    CHECK(bwd.truncation == doctest::Approx(f(prefix(x, s))).epsilon(1e-7));
  }
}

TEST_CASE("remainder bounds") {
  SUBCASE("rho") {
    const Path x({0.0, 0.2, 0.4}, {1.0, 1.3, 1.1});
    const BoundComponents b = remainder_bound(exp_increment(), x, 2, 5);
    CHECK(b.rho == doctest::Approx(0.8));
    CHECK(b.sup_norm == doctest::Approx(0.3));
    CHECK(b.per_word.size() == 4);
  }
  SUBCASE("signature coordinate below the order") {
    auto rng = make_stream(28, 0);
    const Path x = random_lipschitz_path(rng, 10, 0.5, 1.0);
    const Functional f = signature_coordinate(w("01"));
    const BoundComponents b = remainder_bound(f, x, 3, 5);
    CHECK(std::isfinite(b.sum_bound));
    CHECK(std::isfinite(b.ck_bound));
    CHECK(std::abs(*maclaurin(f, x, 3).remainder) <= b.sum_bound + 1e-15);
  }
  SUBCASE("exp of the increment on small paths") {
    auto rng = make_stream(29, 0);
    const Functional f = exp_increment();
    for (int trial = 0; trial < 50; ++trial) {
      const Path x = random_lipschitz_path(rng, 10, 0.1, 1.0);
      const ExpansionReport r = maclaurin(f, x, 3);
      const BoundComponents b = remainder_bound(f, x, 3, 9, {}, 1.1);
      CHECK(std::abs(*r.remainder) <= b.sum_bound);
      CHECK(std::abs(*r.remainder) <= b.ck_bound);
    }
  }
}

TEST_CASE("Lipschitz remainder bound and radius") {
  const Path y = Path::line(0.0, 0.0625, 0.25, 4);
  for (int K = 1; K <= 6; ++K) CHECK(remainder_bound_lip(1.0, 1.0, y, K) == doctest::Approx(std::pow(0.5, K)));
  CHECK(std::isinf(radius_estimate(1.0, 1.0)));
  CHECK(radius_estimate(2.0, 0.5) == doctest::Approx(0.25));
  CHECK(radius_estimate(0.1, 0.5) == doctest::Approx(1.0));
  CHECK(radius_estimate(1.0, 1.5) == 0.0);

  auto rng = make_stream(30, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Path p = random_lipschitz_path(rng, 10, 0.8, 2.0);
    const double lip = lipschitz_seminorm(p);
    const Signature s = signature(p, 5);
    for (const Word& a : enumerate_words(5)) {
      const double bound = std::pow(lip, a.count1()) * std::pow(p.length(), a.size()) / std::tgamma(a.size() + 1.0);
      CHECK(std::abs(s[a]) <= bound * (1.0 + 1e-12) + 1e-15);
    }
  }
}

TEST_CASE("remainder decays geometrically") {
  auto rng = make_stream(31, 0);
  const Functional f = exp_affine(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const Path x = random_lipschitz_path(rng, 12, 0.25, 1.0);
    const double rho = 2.0 * std::max(x.length(), sup_increment(x));
    REQUIRE(rho <= 0.5);
    const double r1 = std::abs(*maclaurin(f, x, 1).remainder);
    double prev = r1;
    for (int K = 2; K <= 6; ++K) {
      const double cur = std::abs(*maclaurin(f, x, K).remainder);
      CHECK(cur <= prev * (1.0 + 1e-9));
      CHECK(cur <= r1 * std::pow(rho, K - 2) * (1.0 + 1e-9));
      prev = cur;
    }
  }
}

TEST_CASE("intrinsic value expansion") {
  auto rng = make_stream(32, 0);
  const double T = 1.0;
  const Path x = random_lipschitz_path(rng, 40, T, 1.5, 0.3, 8);

  SUBCASE("terminal value") {
    const IveReport r = ive_expand(with_horizon(terminal_value(), T), x, 2);
    CHECK(r.order_terms[0] == doctest::Approx(0.3));
    CHECK(r.order_terms[1] == doctest::Approx(x.terminal() - 0.3).epsilon(1e-8));
    CHECK(std::abs(r.residual) <= 1e-8);
  }
  SUBCASE("signature coordinates are homogeneous") {
    for (const char* a : {"01", "10", "011"}) {
      const Word word = w(a);
      const Functional g = with_horizon(signature_coordinate(word), T);
      const IveReport r = ive_expand(g, x, 4);
      const double target = signature(x, 3)[word];
      const double scale = std::pow(lipschitz_seminorm(x), word.count1()) * std::pow(T, word.size()) /
                           std::tgamma(word.size() + 1.0);
      for (int k = 0; k < 4; ++k) {
        if (k == word.count1()) {
          CHECK(rel_err(r.order_terms[k], target, scale) <= 1e-3);
        } else {
          CHECK(std::abs(r.order_terms[k]) <= 1e-3 * scale);
        }
      }
    }
  }
  SUBCASE("quadratic functional") {
    const IveReport r = ive_expand(squared_integral(T), x, 3);
    double size = 0.0;
    for (double v : r.order_terms) size += std::abs(v);
    CHECK(std::abs(r.residual) <= 1e-3 * size);
    const IveReport fine = ive_expand(squared_integral(T), refine(x, 2), 3);
    CHECK(std::abs(fine.residual) <= std::abs(r.residual) / 10.0);
  }
  SUBCASE("order-k terms scale like gamma^k") {
    const Functional g = with_horizon(exp_affine(0.4, 0.7), T);
    const IveReport r = ive_expand(g, x, 3);
    for (double gamma : {0.5, 2.0}) {
      const Path xs = map_values(x, [&](double v) { return 0.3 + gamma * (v - 0.3); });
      const IveReport rs = ive_expand(g, xs, 3);
      for (int k = 0; k < 3; ++k)
        CHECK(rs.order_terms[k] == doctest::Approx(std::pow(gamma, k) * r.order_terms[k]).epsilon(1e-9));
    }
  }
}

TEST_CASE("ive kernel reconstruction") {
  const double T = 1.3;
  const std::vector<double> t1{0.4};
  const Functional s10 = with_horizon(signature_coordinate(w("10")), T);
  CHECK(ive_kernel_reconstruct(s10, t1, 2) == doctest::Approx(T - 0.4).epsilon(1e-6));
  CHECK(ive_kernel_reconstruct(s10, t1, 2, fd_only()) == doctest::Approx(T - 0.4).epsilon(1e-6));

  const std::vector<double> t2{0.2, 0.9};
  const Functional s11 = with_horizon(signature_coordinate(w("11")), T);
  CHECK(ive_kernel_reconstruct(s11, t2, 2) == doctest::Approx(1.0).epsilon(1e-6));

  const Functional g = integral_times_terminal(T);
  const Path flat = Path::constant(0.5, T);
  for (const auto& ts : {std::vector<double>{0.3}, std::vector<double>{0.25, 1.0}}) {
    const double rec = ive_kernel_reconstruct(g, ts, 4, {}, 0.5);
    const double direct = malliavin_iter(g, flat, ts);
    CHECK(rel_err(rec, direct) <= 1e-3);
  }
}

TEST_CASE("Gauss-Hermite rule") {
  const GaussHermite gh = gauss_hermite(20);
  double m0 = 0, m2 = 0, m4 = 0;
  for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
    m0 += gh.weights[i];
    m2 += gh.weights[i] * std::pow(gh.nodes[i], 2);
    m4 += gh.weights[i] * std::pow(gh.nodes[i], 4);
  }
  CHECK(m0 == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(m2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m4 == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("chaos coefficients") {
  const double T = 0.8;
  auto near = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); };

  const auto cube = chaos_coeffs([](double v) { return v * v * v; }, 1.0, T, 5);
  const std::vector<double> cube_expect{0, 3 * T, 0, 6, 0, 0};
  for (int k = 0; k < 6; ++k) CHECK(near(cube[k], cube_expect[k]));

  const auto one = chaos_coeffs([](double) { return 1.0; }, 1.0, T, 4);
  for (int k = 0; k < 5; ++k) CHECK(near(one[k], k == 0 ? 1.0 : 0.0));

  const auto sq = chaos_coeffs([](double v) { return v * v; }, 1.0, T, 4);
  const std::vector<double> sq_expect{T, 0, 2, 0, 0};
  for (int k = 0; k < 5; ++k) CHECK(near(sq[k], sq_expect[k]));

  const auto ex = chaos_coeffs([](double v) { return std::exp(v); }, 1.0, T, 10);
  CHECK(ex.size() == 11);
  for (int k = 0; k <= 10; ++k) CHECK(ex[k] == doctest::Approx(std::exp(T / 2)).epsilon(1e-10));

  for (double y = -2.0; y <= 2.0; y += 0.25) {
    CHECK(std::abs(chaos_reconstruct(cube, 1.0, T, y) - y * y * y) <= 1e-8);
    CHECK(std::abs(chaos_reconstruct(sq, 1.0, T, y) - y * y) <= 1e-8);
  }
  for (double y = -1.5; y <= 1.5; y += 0.25) CHECK(std::abs(chaos_reconstruct(ex, 1.0, T, y) - std::exp(y)) <= 1e-4);

  CHECK_THROWS_AS(chaos_coeffs([](double v) { return v; }, 0.0, T, 3), std::invalid_argument);
}

TEST_CASE("chaos to signature") {
  const double T = 0.8;
  const auto sq = chaos_coeffs([](double v) { return v * v; }, 1.0, T, 2);
  const WordPoly p = chaos_to_signature(sq);
  CHECK(p.coefficient(w("0"))(T) == doctest::Approx(-1.0));
  CHECK(p.coefficient(w("11"))(T) == doctest::Approx(2.0));
  CHECK(p.coefficient(Word{})(T) == doctest::Approx(T));

  const auto one = chaos_coeffs([](double) { return 2.0; }, 1.0, T, 3);
  const WordPoly c = chaos_to_signature(one);
  for (const auto& [word, coef] : c.terms())
    CHECK(std::abs(coef(T) - (word.empty() ? 2.0 : 0.0)) <= 1e-12);

  auto rng = make_stream(33, 0);
  const auto cube = chaos_coeffs([](double v) { return v * v * v; }, 1.0, T, 3);
  const WordPoly pc = chaos_to_signature(cube);
  for (int trial = 0; trial < 10; ++trial) {
    const Path x = random_lipschitz_path(rng, 20, T, 2.0);
    const double y = x.terminal();
    CHECK(std::abs(evaluate(p, signature(x, 3)) - y * y) <= 1e-10);
    CHECK(std::abs(evaluate(pc, signature(x, 4)) - y * y * y) <= 1e-10);
    // same endpoints, different interior
    const Path straight = Path::line(0.0, y, T, 3);
    CHECK(evaluate(pc, signature(straight, 4)) == doctest::Approx(evaluate(pc, signature(x, 4))).epsilon(1e-10));
  }
}

TEST_CASE("word identity for the Gaussian price functional") {
  const double T = 0.8;
  auto h = [](double v) { return std::exp(v); };
  const auto coeffs = chaos_coeffs(h, 1.0, T, 4);
  const Functional f = gaussian_price_functional(h, 1.0, T);
  const Path zero = Path::point(0.0);
  for (const Word& a : enumerate_words(4)) {
    const int weight = a.weighted_length();
    if (weight > 4) continue;
    const double fd = delta_word(f, zero, a);
    const double expect = coeffs[weight] * std::pow(-0.5, a.count0());
    CHECK(rel_err(fd, expect) <= 1e-3);
  }
}
