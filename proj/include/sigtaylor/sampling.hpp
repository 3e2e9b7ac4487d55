#pragma once

#include <cstdint>
#include <random>

#include "sigtaylor/path.hpp"

namespace sigtaylor {

/// Seeded generator for one stream, keyed by (seed, stream index).
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t index);

/// Uniform grid with n segments on [0, length], slopes uniform in [-max_slope, max_slope].
/// With knots > 0 the slope is redrawn only on `knots` equal blocks of segments.
Path random_lipschitz_path(std::mt19937_64& rng, std::size_t n, double length, double max_slope, double x0 = 0.0,
                           std::size_t knots = 0);

/// Gaussian random walk with increments sigma * sqrt(dt) * N(0, 1) on a uniform grid.
Path random_walk_path(std::mt19937_64& rng, std::size_t n, double length, double sigma, double x0 = 0.0);

}  // namespace sigtaylor
