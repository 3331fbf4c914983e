#pragma once

#include "hilbert/common.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace hilbert {

/// Deterministic generator derived from (seed, stream). Every random quantity
/// in the library comes from one of these.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Van der Corput radical inverse of `index` in `base`.
double radical_inverse(std::uint64_t index, int base);

/// Halton point `index` in `dim` dimensions (first primes as bases).
std::vector<double> halton(std::uint64_t index, int dim);

/// Quasi-uniform unit directions on S^{n-1}. In 2D these are equispaced angles
/// (offset by half a step), in 3D a Fibonacci lattice, otherwise Halton points
/// pushed through the normal quantile and normalized.
std::vector<Vec> sphere_directions(int n, int count);

/// Gauss-Legendre rule on [-1, 1] of the given order (supported: 4, 8, 16).
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int order);

}  // namespace hilbert
