#pragma once

// Hand-rolled generators for property tests. Seeds are fixed by callers.

#include <random>
#include <vector>

#include "toricdef/exact_lattice.hpp"

namespace testgen {

using toricdef::Integer;
using toricdef::LatticeVector;
using toricdef::Rational;
using toricdef::RationalVector;

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

/// Nonzero integer vectors with coordinates in [-range, range].
inline std::vector<LatticeVector> random_vectors(std::mt19937_64& rng, std::size_t d, std::size_t count, long range) {
  std::vector<LatticeVector> out;
  while (out.size() < count) {
    LatticeVector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = uniform(rng, -range, range);
    if (!v.is_zero()) out.push_back(v);
  }
  return out;
}

/// Rational points with numerators in [-range, range] and denominators in [1, max_den].
inline std::vector<RationalVector> random_points(std::mt19937_64& rng, std::size_t d, std::size_t count, long range,
                                                 long max_den) {
  std::vector<RationalVector> out;
  for (std::size_t k = 0; k < count; ++k) {
    RationalVector v(d);
    long den = uniform(rng, 1, max_den);
    for (std::size_t i = 0; i < d; ++i) v[i] = toricdef::make_rational(uniform(rng, -range, range), den);
    out.push_back(v);
  }
  return out;
}

inline std::vector<LatticeVector> random_lattice_points(std::mt19937_64& rng, std::size_t d, std::size_t count,
                                                        long range) {
  std::vector<LatticeVector> out;
  for (std::size_t k = 0; k < count; ++k) {
    LatticeVector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = uniform(rng, -range, range);
    out.push_back(v);
  }
  return out;
}

}  // namespace testgen
