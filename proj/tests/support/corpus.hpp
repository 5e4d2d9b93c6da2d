#pragma once

// Random valid deformation data, n <= 3, k <= 2, coordinates within [-5, 5].
//
// Two generation strategies, both filtered through validate_datum:
//  - w in the dual cone, summands inside sigma (the slice condition is vacuous);
//  - Q_0 the apex of sigma cap {w = -1}, further summands in w-perp.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "support/random.hpp"
#include "toricdef/datum.hpp"

namespace testgen {

using toricdef::Cone;
using toricdef::DeformationDatum;
using toricdef::Polyhedron;

inline Cone random_pointed_cone(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    auto gens = random_vectors(rng, n, n + (rng() % 2), 3);
    Cone c = toricdef::cone_from_generators(n, gens);
    if (c.is_strongly_convex() && c.is_full_dimensional()) return c;
  }
}

/// Lattice points of sigma with coordinates in [-range, range].
inline std::vector<LatticeVector> points_in_cone(const Cone& c, long range) {
  std::vector<LatticeVector> out;
  const std::size_t n = c.rank;
  LatticeVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -range;
  for (;;) {
    if (c.contains(x)) out.push_back(x);
    std::size_t i = n;
    for (;;) {
      if (i == 0) return out;
      --i;
      if (x[i] < range) {
        x[i] += 1;
        break;
      }
      x[i] = -range;
    }
  }
}

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[rng() % v.size()];
}

inline std::optional<DeformationDatum> candidate_dual_w(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  DeformationDatum d;
  d.sigma = random_pointed_cone(rng, n);
  auto pts = points_in_cone(d.sigma, 2);
  if (pts.size() < 3) return std::nullopt;

  // Q_0 with denominators up to 2, avoiding the origin.
  std::vector<RationalVector> q0;
  std::size_t m0 = 1 + rng() % 2;
  for (std::size_t j = 0; j < m0; ++j) {
    const LatticeVector& v = pick(rng, pts);
    long den = 1 + static_cast<long>(rng() % 2);
    RationalVector h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = toricdef::make_rational(v[i], den);
    q0.push_back(h);
  }
  d.summands.push_back(toricdef::convex_hull(n, q0));
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<LatticeVector> qi;
    std::size_t mi = 1 + rng() % 3;
    for (std::size_t j = 0; j < mi; ++j) qi.push_back(pick(rng, pts));
    d.summands.push_back(toricdef::convex_hull(n, qi));
  }
  toricdef::Cone dual = toricdef::dual_cone(d.sigma);
  d.w = LatticeVector(n);
  for (const auto& r : dual.rays) d.w = d.w + Integer(static_cast<long>(rng() % 3)) * r;
  d.boundary = true;
  return d;
}

inline std::optional<DeformationDatum> candidate_slice(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  DeformationDatum d;
  d.sigma = random_pointed_cone(rng, n);
  d.w = random_vectors(rng, n, 1, 2).front();
  std::vector<toricdef::AffineConstraint> ineqs;
  for (const auto& f : d.sigma.facets) ineqs.push_back(toricdef::AffineConstraint{f, 0});
  Polyhedron slice = toricdef::polyhedron_from_inequalities(n, ineqs, {toricdef::AffineConstraint{d.w, 1}});
  if (slice.empty || !slice.is_bounded()) return std::nullopt;
  d.summands.push_back(slice);
  // further summands: small lattice polytopes containing 0 inside w-perp
  std::vector<LatticeVector> perp;
  for (const auto& v : random_lattice_points(rng, n, 12, 2))
    if (toricdef::dot(d.w, v) == 0) perp.push_back(v);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<LatticeVector> qi{LatticeVector(n)};
    if (!perp.empty() && rng() % 3 != 0) qi.push_back(pick(rng, perp));
    d.summands.push_back(toricdef::convex_hull(n, qi));
  }
  d.boundary = true;
  return d;
}

inline bool within_bounds(const DeformationDatum& d, long bound) {
  for (const auto& q : d.summands)
    for (const auto& v : q.vertices)
      for (const auto& c : v)
        if (abs(c) > bound) return false;
  for (const auto& c : d.w)
    if (abs(c) > bound) return false;
  return true;
}

/// At least `count` valid data, deterministic for a given seed.
inline std::vector<DeformationDatum> random_valid_data(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<DeformationDatum> out;
  std::size_t attempt = 0;
  while (out.size() < count) {
    ++attempt;
    std::size_t n = 2 + rng() % 2;
    std::size_t k = 1 + rng() % 2;
    auto cand = (attempt % 2 == 0) ? candidate_dual_w(rng, n, k) : candidate_slice(rng, n, k);
    if (!cand || !within_bounds(*cand, 5)) continue;
    if (!toricdef::validate_datum(*cand).valid()) continue;
    out.push_back(std::move(*cand));
  }
  return out;
}

/// Lattice points of the dual cone of sigma with coordinates within bound.
inline std::vector<LatticeVector> dual_lattice_points(const Cone& sigma, long bound) {
  return points_in_cone(toricdef::dual_cone(sigma), bound);
}

}  // namespace testgen
