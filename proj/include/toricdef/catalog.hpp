#pragma once

// Named inputs used by the presets, the CLI and the tests.

#include <string>
#include <vector>

#include "toricdef/cox.hpp"

namespace toricdef::catalog {

inline RationalVector rational(std::initializer_list<Rational> xs) { return RationalVector(std::vector<Rational>(xs)); }

inline Polyhedron lattice_polytope(std::size_t rank, const std::vector<LatticeVector>& points) {
  return convex_hull(rank, points);
}

/// cA_1 threefold xy = u^2 with the smoothing direction z^p.
inline DeformationDatum cA1(long p = 3) {
  DeformationDatum d;
  d.sigma = cone_from_generators(3, {LatticeVector{1, 1, 0}, LatticeVector{-1, 1, 0}, LatticeVector{0, 0, 1}});
  d.summands.push_back(convex_hull(3, std::vector<RationalVector>{rational({Rational(-1, 2), Rational(1, 2), 0})}));
  d.summands.push_back(lattice_polytope(3, {LatticeVector{0, 0, 0}, LatticeVector{1, 0, 0}}));
  d.w = LatticeVector{0, -2, p};
  d.boundary = true;
  return d;
}

inline AliasTable cA1_aliases() {
  return AliasTable{{{LatticeVector{0, 0, 0, 1}, "x"},
                     {LatticeVector{1, 0, 0, 1}, "y"},
                     {LatticeVector{0, 0, 1, 0}, "z"},
                     {LatticeVector{-1, 1, 0, -2}, "u"}}};
}

/// The plane A^2 with a single ray split off: sigma~ in Z^3 has three rays.
inline DeformationDatum toy_plane() {
  DeformationDatum d;
  d.sigma = cone_from_generators(2, {LatticeVector{1, 0}, LatticeVector{0, 1}});
  d.summands.push_back(lattice_polytope(2, {LatticeVector{0, 1}}));
  d.summands.push_back(lattice_polytope(2, {LatticeVector{0, 0}}));
  d.w = LatticeVector{0, -1};
  d.boundary = true;
  return d;
}

inline AliasTable toy_plane_aliases() {
  return AliasTable{{{LatticeVector{1, 0, 0}, "x"}, {LatticeVector{0, 0, 1}, "y"}, {LatticeVector{0, 1, -1}, "z"}}};
}

/// Vertices of the hexagon whose cone at height 1 is the affine cone over
/// the degree 6 del Pezzo surface.
inline std::vector<LatticeVector> hexagon_vertices() {
  return {LatticeVector{0, 0}, LatticeVector{1, 0}, LatticeVector{2, 1},
          LatticeVector{2, 2}, LatticeVector{1, 2}, LatticeVector{0, 1}};
}

/// The two Minkowski decompositions of the hexagon: three segments, or two triangles.
inline std::vector<Polyhedron> hexagon_segments() {
  return {lattice_polytope(2, {LatticeVector{0, 0}, LatticeVector{1, 0}}),
          lattice_polytope(2, {LatticeVector{0, 0}, LatticeVector{0, 1}}),
          lattice_polytope(2, {LatticeVector{0, 0}, LatticeVector{1, 1}})};
}

inline std::vector<Polyhedron> hexagon_triangles() {
  return {lattice_polytope(2, {LatticeVector{0, 0}, LatticeVector{1, 0}, LatticeVector{1, 1}}),
          lattice_polytope(2, {LatticeVector{0, 0}, LatticeVector{0, 1}, LatticeVector{1, 1}})};
}

/// Datum over the cone on the hexagon at height 1, with w = -e_3* and
/// Q_0 the apex of the slice; the given summands are lifted to height 0.
inline DeformationDatum hexagon_datum(const std::vector<Polyhedron>& decomposition) {
  DeformationDatum d;
  std::vector<LatticeVector> gens;
  for (const auto& v : hexagon_vertices()) gens.push_back(concat(v, LatticeVector{1}));
  d.sigma = cone_from_generators(3, gens);
  d.summands.push_back(lattice_polytope(3, {LatticeVector{0, 0, 1}}));
  for (const auto& part : decomposition) {
    std::vector<LatticeVector> lifted;
    for (const auto& v : part.vertices) lifted.push_back(concat(to_lattice(v), LatticeVector{0}));
    d.summands.push_back(lattice_polytope(3, lifted));
  }
  d.w = LatticeVector{0, 0, -1};
  d.boundary = true;
  return d;
}

/// Fano triangle of P^2 and its mutation datum towards P(1,1,4).
inline Polyhedron p2_triangle() {
  return lattice_polytope(2, {LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{-1, -1}});
}

inline Polyhedron p114_triangle() {
  return lattice_polytope(2, {LatticeVector{-1, -1}, LatticeVector{0, 1}, LatticeVector{4, 3}});
}

inline LatticeVector p2_mutation_w() { return LatticeVector{-1, 2}; }

inline Polyhedron p2_mutation_factor() { return lattice_polytope(2, {LatticeVector{0, 0}, LatticeVector{2, 1}}); }

/// Names x, z0, z1, y for the family over P(1,1,1,2).
inline AliasTable p2_family_aliases() {
  return AliasTable{{{LatticeVector{0, 1, 0}, "x"},
                     {LatticeVector{0, 0, 1}, "z0"},
                     {LatticeVector{2, 1, 1}, "z1"},
                     {LatticeVector{-1, -1, -1}, "y"}}};
}

}  // namespace toricdef::catalog
