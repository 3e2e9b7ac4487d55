#include "sigtaylor/sampling.hpp"

#include <cmath>

namespace sigtaylor {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

Path random_lipschitz_path(std::mt19937_64& rng, std::size_t n, double length, double max_slope, double x0,
                           std::size_t knots) {
  std::uniform_real_distribution<double> slope(-max_slope, max_slope);
  if (knots == 0 || knots > n) knots = n;
  std::vector<double> t(n + 1), x(n + 1);
  const double dt = length / static_cast<double>(n);
  x[0] = x0;
  double m = 0.0;
  std::size_t block = static_cast<std::size_t>(-1);
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t b = (i - 1) * knots / n;
    if (b != block) {
      m = slope(rng);
      block = b;
    }
    t[i] = i == n ? length : dt * static_cast<double>(i);
    x[i] = x[i - 1] + m * (t[i] - t[i - 1]);
  }
  return Path(std::move(t), std::move(x));
}

Path random_walk_path(std::mt19937_64& rng, std::size_t n, double length, double sigma, double x0) {
  std::normal_distribution<double> z;
  std::vector<double> t(n + 1), x(n + 1);
  const double dt = length / static_cast<double>(n);
  const double sd = sigma * std::sqrt(dt);
  x[0] = x0;
  for (std::size_t i = 1; i <= n; ++i) {
    t[i] = i == n ? length : dt * static_cast<double>(i);
    x[i] = x[i - 1] + sd * z(rng);
  }
  return Path(std::move(t), std::move(x));
}

}  // namespace sigtaylor
