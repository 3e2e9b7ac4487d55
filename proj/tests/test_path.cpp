#include <random>

#include "doctest.h"
#include "sigtaylor/path.hpp"
#include "sigtaylor/sampling.hpp"
#include "support.hpp"

using namespace sigtaylor;
using testutil::close;

TEST_CASE("path validation") {
  CHECK_THROWS_AS(Path({}, {}), PathError);
  CHECK_THROWS_AS(Path({0.0, 1.0}, {0.0}), PathError);
  CHECK_THROWS_AS(Path({0.5, 1.0}, {0.0, 1.0}), PathError);
  CHECK_THROWS_AS(Path({0.0, 1.0, 0.5}, {0.0, 1.0, 2.0}), PathError);
  CHECK_THROWS_AS(Path({0.0, 1.0, 1.0, 1.0}, {0.0, 1.0, 2.0, 3.0}), PathError);
  CHECK_NOTHROW(Path({0.0, 1.0, 1.0}, {0.0, 1.0, 2.0}));
}

TEST_CASE("evaluation is right-continuous at jumps") {
  Path x({0.0, 1.0, 1.0, 2.0}, {0.0, 1.0, 3.0, 3.0});
  CHECK(x.value_at(0.5) == doctest::Approx(0.5));
  CHECK(x.value_at(1.0) == 3.0);
  CHECK(x.left_limit(1.0) == 1.0);
  CHECK(x.has_jumps());
  CHECK(x.jump_indices() == std::vector<std::size_t>{1});
}

TEST_CASE("concat") {
  Path x = Path::constant(1.0, 1.0);
  Path z = Path::line(0.0, 2.0, 1.0);
  Path y = concat(x, z);
  CHECK(y.length() == 2.0);
  CHECK(y.value_at(0.5) == 1.0);
  CHECK(y.value_at(1.5) == doctest::Approx(2.0));
  CHECK(y.terminal() == 3.0);

  CHECK(concat(x, Path::point(5.0)) == x);

  Path x1 = Path::line(0.0, 1.0, 1.0);
  Path z3 = Path::line(0.0, 3.0, 3.0, 3);
  Path yt = concat(x1, z3, 2.0);
  CHECK(yt.length() == doctest::Approx(2.0));
  CHECK(yt.terminal() == doctest::Approx(2.0));
}

TEST_CASE("concat is associative") {
  auto rng = make_stream(1, 0);
  for (int k = 0; k < 20; ++k) {
    Path a = random_lipschitz_path(rng, 7, 0.3, 2.0, 0.4);
    Path b = random_lipschitz_path(rng, 5, 0.5, 2.0, -1.0);
    Path c = random_lipschitz_path(rng, 9, 0.2, 2.0, 2.0);
    Path l = concat(concat(a, b), c);
    Path r = concat(a, concat(b, c));
    REQUIRE(l.size() == r.size());
    for (std::size_t i = 0; i < l.size(); ++i) {
      CHECK(close(l.times()[i], r.times()[i], 1e-12));
      CHECK(close(l.values()[i], r.values()[i], 1e-12, 1e-12));
    }
  }
}

TEST_CASE("stop_extend") {
  Path x = Path::line(0.0, 1.0, 1.0);
  Path y = stop_extend(x, 0.5);
  CHECK(y.length() == 1.5);
  CHECK(y.terminal() == 1.0);
  CHECK(y.value_at(1.25) == 1.0);
  CHECK(stop_extend(x, 0.0) == x);
  CHECK_THROWS_AS(stop_extend(x, -0.1), PathError);
  CHECK_THROWS_AS(stop_extend(x, 2.0, 2.0), PathError);

  Path z = stop_extend(Path::line(0.0, 1.0, 0.7), 1.3, 2.0);
  CHECK(z.length() == doctest::Approx(2.0));

  CHECK(stop_extend(stop_extend(x, 0.25), 0.5) == stop_extend(x, 0.75));
}

TEST_CASE("bump and bump_to") {
  Path flat = Path::constant(0.0, 1.0);
  Path b = bump(flat, 0.1);
  CHECK(b.terminal() == 0.1);
  CHECK(b.left_limit(1.0) == 0.0);
  CHECK(b.length() == 1.0);
  CHECK(bump(flat, 0.0) == flat);
  CHECK(bump(bump(flat, 0.1), -0.1) == flat);

  Path x = Path::line(0.0, 0.4, 1.0);
  CHECK(bump_to(x, 0.4) == x);
  CHECK(bump_to(x, 1.0).terminal() == 1.0);
}

TEST_CASE("restrict and reverse_restrict") {
  Path x = Path::line(0.0, 2.0, 2.0, 4);
  Path r = restrict(x, 1.0, 2.0);
  CHECK(r.length() == 1.0);
  CHECK(r.start() == doctest::Approx(1.0));
  CHECK(r.terminal() == doctest::Approx(2.0));

  Path rr = reverse_restrict(x, 2.0, 1.0);
  CHECK(rr.length() == 1.0);
  CHECK(rr.start() == doctest::Approx(2.0));
  CHECK(rr.terminal() == doctest::Approx(1.0));

  Path xt = prefix(x, 1.5);
  Path back = concat(xt, reverse_restrict(x, 1.5, 0.5));
  CHECK(back.terminal() == doctest::Approx(x.value_at(0.5)));

  Path j({0.0, 1.0, 1.0, 2.0}, {0.0, 1.0, 2.0, 2.0});
  CHECK_THROWS_AS(reverse_restrict(j, 2.0, 0.5), PathError);
  CHECK_NOTHROW(reverse_restrict(j, 0.9, 0.1));
}

TEST_CASE("reversing twice returns the restriction") {
  auto rng = make_stream(2, 0);
  for (int k = 0; k < 20; ++k) {
    Path x = random_lipschitz_path(rng, 40, 1.0, 3.0);
    Path r = restrict(x, 0.2, 0.9);
    Path rr = reverse_restrict(reverse_restrict(x, 0.9, 0.2), r.length(), 0.0);
    REQUIRE(rr.size() == r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      CHECK(rr.values()[i] == r.values()[i]);
      CHECK(close(rr.times()[i], r.times()[i], 1e-14, 1e-15));
    }
  }
}

TEST_CASE("quadratic variation") {
  PartitionSeq seq{PartitionScheme::dyadic, 1, 20, 1.0};
  CHECK(seq.level(3).size() == 9);
  CHECK(seq.mesh(4) < seq.mesh(3));

  Path lin = Path::line(0.0, 1.0, 1.0);
  auto qv = quadratic_variation(lin, seq, 10);
  CHECK(qv.back().value == doctest::Approx(std::ldexp(1.0, -10)));
  auto qv2 = quadratic_variation(lin, seq, 14);
  CHECK(qv2.back().value < qv.back().value);

  Path c = Path::constant(3.0, 1.0);
  CHECK(quadratic_variation(c, seq, 8).back().value == 0.0);

  PartitionSeq uni{PartitionScheme::uniform, 1, 1000, 1.0};
  CHECK(uni.level(10).size() == 11);
}

TEST_CASE("quadratic variation of scaled Brownian samples") {
  const int n = 1 << 14;
  PartitionSeq seq{PartitionScheme::dyadic, 1, 14, 1.0};
  for (double sigma : {1.0, 0.5}) {
    double mean = 0.0;
    int within = 0;
    for (int s = 0; s < 100; ++s) {
      auto rng = make_stream(100 + s, 0);
      Path w = random_walk_path(rng, n, 1.0, sigma);
      const double q = quadratic_variation(w, seq, 14).back().value;
      mean += q / 100.0;
      if (std::abs(q - sigma * sigma) <= 0.05 * sigma * sigma) ++within;
    }
    CHECK(mean == doctest::Approx(sigma * sigma).epsilon(0.01));
    CHECK(within == 100);
  }
}

TEST_CASE("metrics") {
  Path x = Path::constant(0.0, 1.0);
  Path y = Path::constant(0.0, 0.5);
  CHECK(lambda_distance(x, x) == 0.0);
  CHECK(lambda_distance(x, y) == doctest::Approx(0.5));
  CHECK(lambda_distance(y, x) == doctest::Approx(0.5));
  CHECK(lipschitz_seminorm(Path::line(0.0, 3.0, 1.0)) == doctest::Approx(3.0));
  CHECK(std::isinf(lipschitz_seminorm(bump(x, 1.0))));
  CHECK(sup_norm(Path::line(-2.0, 1.0, 1.0)) == 2.0);
  CHECK(d1_distance(x, x) == 0.0);
  CHECK(d1_distance(Path::line(0.0, 1.0, 1.0), Path::constant(0.0, 1.0)) == doctest::Approx(1.0));
}

TEST_CASE("lambda distance triangle inequality") {
  auto rng = make_stream(3, 0);
  for (int k = 0; k < 100; ++k) {
    std::uniform_real_distribution<double> len(0.1, 1.0);
    Path a = random_lipschitz_path(rng, 11, len(rng), 2.0);
    Path b = random_lipschitz_path(rng, 7, len(rng), 2.0);
    Path c = random_lipschitz_path(rng, 5, len(rng), 2.0);
    CHECK(lambda_distance(a, c) <= lambda_distance(a, b) + lambda_distance(b, c) + 1e-12);
  }
}

TEST_CASE("parallel and block shifts") {
  Path x = Path::line(0.0, 1.0, 1.0, 4);
  Path s = parallel_shift(x, 0.3, 0.5);
  CHECK(s.value_at(0.2) == doctest::Approx(0.2));
  CHECK(s.value_at(0.3) == doctest::Approx(0.8));
  CHECK(s.terminal() == doctest::Approx(1.5));
  Path s0 = parallel_shift(x, 0.0, 0.5);
  CHECK(s0.start() == 0.0);
  CHECK(s0.terminal() == doctest::Approx(1.5));
  Path b = block_shift(x, 0.25, 0.5, 1.0);
  CHECK(b.value_at(0.3) == doctest::Approx(1.3));
  CHECK(b.value_at(0.6) == doctest::Approx(0.6));
  CHECK(refine(x).size() == 9);
}
