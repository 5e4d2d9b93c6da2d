#pragma once

// Exact polyhedral geometry: cones and polyhedra in double representation,
// hulls, Minkowski sums, dual cones, normal fans, lattice points.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "toricdef/exact_lattice.hpp"

namespace toricdef {

namespace detail {

inline void sort_unique(std::vector<LatticeVector>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

inline void require_rank(const std::vector<LatticeVector>& vs, std::size_t rank, const char* what) {
  for (const auto& v : vs)
    if (v.rank() != rank)
      throw Error(ErrorCode::RankMismatch,
                  std::string(what) + " " + v.str() + " does not have rank " + std::to_string(rank));
}

}  // namespace detail

/// {x : <a,x> >= 0 for a in ineqs, <e,x> = 0 for e in eqs} = cone(rays) + span(lineality).
struct DoubleDescription {
  std::vector<LatticeVector> rays;
  std::vector<LatticeVector> lineality;
};

/// Incremental double description over the integers. Adjacency of a ray
/// pair is decided by the rank of their common tight constraints.
/// The output is canonical: lineality in primitive row echelon form, rays
/// projected orthogonally off the lineality, primitive, sorted.
inline DoubleDescription double_description(std::size_t d, const std::vector<LatticeVector>& ineqs,
                                            const std::vector<LatticeVector>& eqs = {}) {
  detail::require_rank(ineqs, d, "inequality");
  detail::require_rank(eqs, d, "equation");

  std::vector<LatticeVector> constraints;
  for (const auto& a : ineqs)
    if (!a.is_zero()) constraints.push_back(a);
  for (const auto& e : eqs)
    if (!e.is_zero()) {
      constraints.push_back(e);
      constraints.push_back(-e);
    }

  std::vector<LatticeVector> lin;
  for (std::size_t i = 0; i < d; ++i) lin.push_back(unit_vector(d, i));
  std::vector<LatticeVector> rays;
  std::vector<std::vector<bool>> tight;  // per ray, over processed constraints

  for (std::size_t ci = 0; ci < constraints.size(); ++ci) {
    const LatticeVector& a = constraints[ci];

    std::size_t l0_idx = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i)
      if (dot(a, lin[i]) != 0) {
        l0_idx = i;
        break;
      }

    if (l0_idx < lin.size()) {
      LatticeVector l0 = lin[l0_idx];
      Integer al0 = dot(a, l0);
      if (al0 < 0) {
        l0 = -l0;
        al0 = -al0;
      }
      std::vector<LatticeVector> new_lin;
      for (std::size_t i = 0; i < lin.size(); ++i) {
        if (i == l0_idx) continue;
        LatticeVector l = al0 * lin[i] - dot(a, lin[i]) * l0;
        new_lin.push_back(primitive(l));
      }
      for (std::size_t r = 0; r < rays.size(); ++r) {
        rays[r] = primitive(al0 * rays[r] - dot(a, rays[r]) * l0);
        tight[r].push_back(true);
      }
      rays.push_back(l0);
      std::vector<bool> t(ci, true);
      t.push_back(false);
      tight.push_back(std::move(t));
      lin = std::move(new_lin);
      continue;
    }

    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg, zero;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(a, rays[r]);
      int s = sgn(val[r]);
      (s > 0 ? pos : s < 0 ? neg : zero).push_back(r);
    }
    if (neg.empty()) {
      for (std::size_t r = 0; r < rays.size(); ++r) tight[r].push_back(val[r] == 0);
      continue;
    }

    const std::size_t need = d - lin.size() - 2;  // rank of common tight rows for adjacency
    std::vector<LatticeVector> new_rays;
    std::vector<std::vector<bool>> new_tight;
    for (std::size_t r : pos) {
      new_rays.push_back(rays[r]);
      new_tight.push_back(tight[r]);
      new_tight.back().push_back(false);
    }
    for (std::size_t r : zero) {
      new_rays.push_back(rays[r]);
      new_tight.push_back(tight[r]);
      new_tight.back().push_back(true);
    }
    if (d >= lin.size() + 2) {
      for (std::size_t p : pos)
        for (std::size_t n : neg) {
          std::vector<LatticeVector> common;
          std::vector<bool> t(ci + 1, false);
          for (std::size_t j = 0; j < ci; ++j)
            if (tight[p][j] && tight[n][j]) {
              common.push_back(constraints[j]);
              t[j] = true;
            }
          if (common.size() < need) continue;
          if (rank_of(common, d) != need) continue;
          t[ci] = true;
          new_rays.push_back(primitive(val[p] * rays[n] - val[n] * rays[p]));
          new_tight.push_back(std::move(t));
        }
    }
    rays = std::move(new_rays);
    tight = std::move(new_tight);
  }

  DoubleDescription out;
  out.lineality = canonical_span_basis(lin, d);
  for (const auto& r : rays) {
    RationalVector pr = project_off(to_rational(r), out.lineality);
    if (pr.is_zero()) continue;
    out.rays.push_back(primitive(pr));
  }
  detail::sort_unique(out.rays);
  return out;
}

/// Polyhedral cone in a lattice of the given rank, stored with both
/// representations. Facets are inner normals in the dual lattice;
/// equations span the annihilator of the cone's linear span.
struct Cone {
  std::size_t rank = 0;
  std::vector<LatticeVector> generators;
  std::vector<LatticeVector> rays;
  std::vector<LatticeVector> lineality;
  std::vector<LatticeVector> facets;
  std::vector<LatticeVector> equations;

  std::size_t dimension() const { return rank - equations.size(); }
  bool is_strongly_convex() const { return lineality.empty(); }
  bool is_full_dimensional() const { return equations.empty(); }

  template <class S>
  bool contains(const BasicVector<S>& v) const {
    if (v.rank() != rank) throw Error(ErrorCode::RankMismatch, "cone membership of " + v.str());
    for (const auto& f : facets)
      if (sgn(dot(f, v)) < 0) return false;
    for (const auto& e : equations)
      if (sgn(dot(e, v)) != 0) return false;
    return true;
  }

  /// Relative interior: every facet strictly positive.
  template <class S>
  bool contains_in_relative_interior(const BasicVector<S>& v) const {
    if (!contains(v)) return false;
    for (const auto& f : facets)
      if (sgn(dot(f, v)) <= 0) return false;
    return true;
  }

  /// Set equality (generators are not compared).
  friend bool operator==(const Cone& a, const Cone& b) {
    return a.rank == b.rank && a.rays == b.rays && a.lineality == b.lineality;
  }
};

inline Cone cone_from_generators(std::size_t rank, const std::vector<LatticeVector>& gens,
                                 const std::vector<LatticeVector>& lineality = {}) {
  detail::require_rank(gens, rank, "generator");
  detail::require_rank(lineality, rank, "lineality generator");
  DoubleDescription dual = double_description(rank, gens, lineality);
  DoubleDescription primal = double_description(rank, dual.rays, dual.lineality);
  Cone c;
  c.rank = rank;
  c.generators = gens;
  c.rays = std::move(primal.rays);
  c.lineality = std::move(primal.lineality);
  c.facets = std::move(dual.rays);
  c.equations = std::move(dual.lineality);
  return c;
}

inline Cone cone_from_inequalities(std::size_t rank, const std::vector<LatticeVector>& ineqs,
                                   const std::vector<LatticeVector>& eqs = {}) {
  DoubleDescription primal = double_description(rank, ineqs, eqs);
  DoubleDescription dual = double_description(rank, primal.rays, primal.lineality);
  Cone c;
  c.rank = rank;
  c.generators = primal.rays;
  c.rays = std::move(primal.rays);
  c.lineality = std::move(primal.lineality);
  c.facets = std::move(dual.rays);
  c.equations = std::move(dual.lineality);
  return c;
}

/// {u : <u,v> >= 0 for all v in C}.
inline Cone dual_cone(const Cone& c) {
  Cone d;
  d.rank = c.rank;
  d.generators = c.facets;
  d.rays = c.facets;
  d.lineality = c.equations;
  d.facets = c.rays;
  d.equations = c.lineality;
  return d;
}

inline bool is_strongly_convex(const Cone& c) { return c.is_strongly_convex(); }
inline std::size_t dimension(const Cone& c) { return c.dimension(); }

inline Cone intersect(const Cone& a, const Cone& b) {
  if (a.rank != b.rank) throw Error(ErrorCode::RankMismatch, "cone intersection");
  std::vector<LatticeVector> f = a.facets, e = a.equations;
  f.insert(f.end(), b.facets.begin(), b.facets.end());
  e.insert(e.end(), b.equations.begin(), b.equations.end());
  return cone_from_inequalities(a.rank, f, e);
}

/// <normal, x> + offset >= 0 (or = 0 for equations).
struct AffineConstraint {
  LatticeVector normal;
  Rational offset;

  template <class S>
  Rational evaluate(const BasicVector<S>& x) const {
    return Rational(dot(normal, x)) + offset;
  }

  friend bool operator==(const AffineConstraint&, const AffineConstraint&) = default;
  friend bool operator<(const AffineConstraint& a, const AffineConstraint& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
  }
};

/// conv(vertices) + cone(rays) + span(lineality), cross-stored as
/// inequalities and equations. An empty polyhedron has no vertices and the
/// single inconsistent inequality 0 - 1 >= 0.
struct Polyhedron {
  std::size_t rank = 0;
  bool empty = false;
  std::vector<RationalVector> vertices;
  std::vector<LatticeVector> rays;
  std::vector<LatticeVector> lineality;
  std::vector<AffineConstraint> inequalities;
  std::vector<AffineConstraint> equations;

  bool is_bounded() const { return rays.empty() && lineality.empty(); }
  bool is_lattice() const {
    return std::all_of(vertices.begin(), vertices.end(), [](const RationalVector& v) { return is_integral(v); });
  }

  /// -1 for the empty set.
  long dimension() const {
    if (empty) return -1;
    return static_cast<long>(rank) - static_cast<long>(equations.size());
  }

  template <class S>
  bool contains(const BasicVector<S>& x) const {
    if (x.rank() != rank) throw Error(ErrorCode::RankMismatch, "polyhedron membership of " + x.str());
    if (empty) return false;
    for (const auto& c : inequalities)
      if (c.evaluate(x) < 0) return false;
    for (const auto& c : equations)
      if (c.evaluate(x) != 0) return false;
    return true;
  }

  template <class S>
  bool contains_in_relative_interior(const BasicVector<S>& x) const {
    if (!contains(x)) return false;
    for (const auto& c : inequalities)
      if (c.evaluate(x) <= 0) return false;
    return true;
  }

  friend bool operator==(const Polyhedron& a, const Polyhedron& b) {
    return a.rank == b.rank && a.empty == b.empty && a.vertices == b.vertices && a.rays == b.rays &&
           a.lineality == b.lineality;
  }
};

inline Polyhedron empty_polyhedron(std::size_t rank) {
  Polyhedron p;
  p.rank = rank;
  p.empty = true;
  p.inequalities.push_back(AffineConstraint{LatticeVector(rank), Rational(-1)});
  return p;
}

namespace detail {

inline LatticeVector homogenize_point(const RationalVector& p) {
  Integer den = denominator(p);
  LatticeVector h(p.rank() + 1);
  for (std::size_t i = 0; i < p.rank(); ++i) h[i] = Rational(p[i] * den).get_num();
  h[p.rank()] = den;
  return h;
}

inline LatticeVector homogenize_direction(const LatticeVector& r) { return concat(r, LatticeVector{0}); }

/// Reads a polyhedron off its homogenization cone (last coordinate = height).
inline Polyhedron polyhedron_from_homogenization(std::size_t rank, const Cone& k) {
  std::vector<LatticeVector> tops;
  Polyhedron p;
  p.rank = rank;
  for (const auto& r : k.rays) {
    if (r[rank] > 0) {
      RationalVector v(rank);
      for (std::size_t i = 0; i < rank; ++i) v[i] = make_rational(r[i], r[rank]);
      p.vertices.push_back(std::move(v));
      tops.push_back(r);
    } else {
      p.rays.push_back(slice(r, 0, rank));
    }
  }
  if (p.vertices.empty()) return empty_polyhedron(rank);
  for (const auto& l : k.lineality) p.lineality.push_back(slice(l, 0, rank));
  std::sort(p.vertices.begin(), p.vertices.end());

  for (const auto& f : k.facets) {
    // The face at infinity carries no information at height 1.
    bool at_infinity = std::all_of(tops.begin(), tops.end(), [&](const LatticeVector& t) { return dot(f, t) > 0; });
    if (at_infinity) continue;
    p.inequalities.push_back(AffineConstraint{slice(f, 0, rank), Rational(f[rank])});
  }
  for (const auto& e : k.equations) p.equations.push_back(AffineConstraint{slice(e, 0, rank), Rational(e[rank])});
  std::sort(p.inequalities.begin(), p.inequalities.end());
  return p;
}

}  // namespace detail

/// Vertex-minimal hull via the cone over the polyhedron at height 1.
/// With no points and no rays the result is the empty polyhedron.
inline Polyhedron convex_hull(std::size_t rank, const std::vector<RationalVector>& points,
                              const std::vector<LatticeVector>& rays = {},
                              const std::vector<LatticeVector>& lineality = {}) {
  if (points.empty()) {
    if (rays.empty() && lineality.empty()) return empty_polyhedron(rank);
    throw Error(ErrorCode::EmptyInput, "recession directions without any point");
  }
  std::vector<LatticeVector> gens, lin;
  for (const auto& p : points) {
    if (p.rank() != rank) throw Error(ErrorCode::RankMismatch, "point " + p.str());
    gens.push_back(detail::homogenize_point(p));
  }
  for (const auto& r : rays) {
    if (r.rank() != rank) throw Error(ErrorCode::RankMismatch, "ray " + r.str());
    if (!r.is_zero()) gens.push_back(detail::homogenize_direction(r));
  }
  for (const auto& l : lineality) {
    if (l.rank() != rank) throw Error(ErrorCode::RankMismatch, "lineality " + l.str());
    lin.push_back(detail::homogenize_direction(l));
  }
  return detail::polyhedron_from_homogenization(rank, cone_from_generators(rank + 1, gens, lin));
}

inline Polyhedron convex_hull(std::size_t rank, const std::vector<LatticeVector>& points,
                              const std::vector<LatticeVector>& rays = {}) {
  std::vector<RationalVector> q;
  for (const auto& p : points) q.push_back(to_rational(p));
  return convex_hull(rank, q, rays);
}

/// {x : <n,x> + c >= 0, <n',x> + c' = 0}, canonicalized.
inline Polyhedron polyhedron_from_inequalities(std::size_t rank, const std::vector<AffineConstraint>& ineqs,
                                               const std::vector<AffineConstraint>& eqs = {}) {
  auto lift = [&](const AffineConstraint& c) {
    if (c.normal.rank() != rank) throw Error(ErrorCode::RankMismatch, "constraint normal " + c.normal.str());
    Integer den = c.offset.get_den();
    LatticeVector h(rank + 1);
    for (std::size_t i = 0; i < rank; ++i) h[i] = c.normal[i] * den;
    h[rank] = c.offset.get_num();
    return h;
  };
  std::vector<LatticeVector> hi, he;
  for (const auto& c : ineqs) hi.push_back(lift(c));
  for (const auto& c : eqs) he.push_back(lift(c));
  hi.push_back(unit_vector(rank + 1, rank));
  DoubleDescription dd = double_description(rank + 1, hi, he);
  std::vector<RationalVector> pts;
  std::vector<LatticeVector> rays, lin;
  for (const auto& r : dd.rays) {
    if (r[rank] > 0) {
      RationalVector v(rank);
      for (std::size_t i = 0; i < rank; ++i) v[i] = make_rational(r[i], r[rank]);
      pts.push_back(std::move(v));
    } else {
      rays.push_back(slice(r, 0, rank));
    }
  }
  for (const auto& l : dd.lineality) lin.push_back(slice(l, 0, rank));
  if (pts.empty()) {
    // Lineality lives at height 0 here, so a point exists only if some ray lifts.
    return empty_polyhedron(rank);
  }
  return convex_hull(rank, pts, rays, lin);
}

inline Polyhedron intersect(const Polyhedron& a, const Polyhedron& b) {
  if (a.rank != b.rank) throw Error(ErrorCode::RankMismatch, "polyhedron intersection");
  if (a.empty || b.empty) return empty_polyhedron(a.rank);
  std::vector<AffineConstraint> ineq = a.inequalities, eq = a.equations;
  ineq.insert(ineq.end(), b.inequalities.begin(), b.inequalities.end());
  eq.insert(eq.end(), b.equations.begin(), b.equations.end());
  return polyhedron_from_inequalities(a.rank, ineq, eq);
}

inline Polyhedron polyhedron_from_cone(const Cone& c) {
  return convex_hull(c.rank, std::vector<RationalVector>{RationalVector(c.rank)}, c.rays, c.lineality);
}

inline Polyhedron translate(const Polyhedron& p, const RationalVector& t) {
  if (p.empty) return p;
  std::vector<RationalVector> v;
  for (const auto& x : p.vertices) v.push_back(x + t);
  return convex_hull(p.rank, v, p.rays, p.lineality);
}

inline Polyhedron scale(const Polyhedron& p, const Rational& s) {
  if (p.empty) return p;
  if (s < 0) throw Error(ErrorCode::InvalidInput, "negative scaling factor");
  std::vector<RationalVector> v;
  for (const auto& x : p.vertices) v.push_back(s * x);
  if (s == 0) return convex_hull(p.rank, std::vector<RationalVector>{RationalVector(p.rank)});
  return convex_hull(p.rank, v, p.rays, p.lineality);
}

inline Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b) {
  if (a.rank != b.rank)
    throw Error(ErrorCode::RankMismatch,
                "Minkowski sum of ranks " + std::to_string(a.rank) + " and " + std::to_string(b.rank));
  if (a.empty || b.empty) return empty_polyhedron(a.rank);
  std::vector<RationalVector> pts;
  for (const auto& x : a.vertices)
    for (const auto& y : b.vertices) pts.push_back(x + y);
  std::vector<LatticeVector> rays = a.rays, lin = a.lineality;
  rays.insert(rays.end(), b.rays.begin(), b.rays.end());
  lin.insert(lin.end(), b.lineality.begin(), b.lineality.end());
  return convex_hull(a.rank, pts, rays, lin);
}

inline Polyhedron minkowski_sum(const std::vector<Polyhedron>& parts) {
  if (parts.empty()) throw Error(ErrorCode::EmptyInput, "Minkowski sum of no summands");
  Polyhedron s = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) s = minkowski_sum(s, parts[i]);
  return s;
}

inline bool polyhedron_equal(const Polyhedron& a, const Polyhedron& b) {
  if (a.rank != b.rank) throw Error(ErrorCode::RankMismatch, "polyhedron comparison");
  return a == b;
}

struct MinResult {
  Rational min;
  Integer floor_min;
  RationalVector argmin_vertex;
};

/// Minimum of the linear functional u over Q, attained at a vertex.
inline MinResult min_functional(const Polyhedron& q, const LatticeVector& u) {
  if (u.rank() != q.rank) throw Error(ErrorCode::RankMismatch, "functional " + u.str());
  if (q.empty) throw Error(ErrorCode::EmptyInput, "minimum over the empty polyhedron");
  for (const auto& r : q.rays)
    if (dot(u, r) < 0) throw Error(ErrorCode::UnboundedBelow, u.str() + " decreases along ray " + r.str());
  for (const auto& l : q.lineality)
    if (dot(u, l) != 0) throw Error(ErrorCode::UnboundedBelow, u.str() + " is not constant on " + l.str());
  MinResult m{dot(u, q.vertices.front()), 0, q.vertices.front()};
  for (const auto& v : q.vertices) {
    Rational x = dot(u, v);
    if (x < m.min) {
      m.min = x;
      m.argmin_vertex = v;
    }
  }
  m.floor_min = floor_of(m.min);
  return m;
}

inline Rational max_functional(const Polyhedron& q, const LatticeVector& u) { return -min_functional(q, -u).min; }

/// Lattice points of a bounded polyhedron, by scanning its bounding box.
inline std::vector<LatticeVector> lattice_points(const Polyhedron& p) {
  if (!p.is_bounded()) throw Error(ErrorCode::Unbounded, "lattice points of an unbounded polyhedron");
  std::vector<LatticeVector> out;
  if (p.empty) return out;
  const std::size_t n = p.rank;
  std::vector<Integer> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = ceil_of(p.vertices.front()[i]);
    hi[i] = floor_of(p.vertices.front()[i]);
    for (const auto& v : p.vertices) {
      lo[i] = std::min(lo[i], ceil_of(v[i]));
      hi[i] = std::max(hi[i], floor_of(v[i]));
    }
    if (lo[i] > hi[i]) return out;
  }
  if (n == 0) {
    out.emplace_back(0);
    return out;
  }
  LatticeVector x(lo);
  for (;;) {
    if (p.contains(x)) out.push_back(x);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (x[i] < hi[i]) {
        x[i] += 1;
        break;
      }
      x[i] = lo[i];
      if (i == 0) {
        std::sort(out.begin(), out.end());
        return out;
      }
    }
  }
}

/// Rays are primitive; each maximal cone lists indices into rays.
struct Fan {
  std::size_t rank = 0;
  std::vector<LatticeVector> rays;
  std::vector<std::vector<std::size_t>> maximal_cones;
};

/// Inner normal fan of a full-dimensional polytope: one maximal cone per
/// vertex, spanned by the normals of the facets through it.
inline Fan normal_fan(const Polyhedron& p) {
  if (p.empty || !p.is_bounded()) throw Error(ErrorCode::Unbounded, "normal fan needs a nonempty polytope");
  if (!p.equations.empty()) throw Error(ErrorCode::NotFullDimensional, "normal fan of a lower-dimensional polytope");
  Fan f;
  f.rank = p.rank;
  for (const auto& c : p.inequalities) f.rays.push_back(primitive(c.normal));
  for (const auto& v : p.vertices) {
    std::vector<std::size_t> cone;
    for (std::size_t i = 0; i < p.inequalities.size(); ++i)
      if (p.inequalities[i].evaluate(v) == 0) cone.push_back(i);
    f.maximal_cones.push_back(std::move(cone));
  }
  return f;
}

/// Whether v lies in R_{>0} * Q, decided by intersecting the admissible
/// intervals of the scaling factor over all constraints of Q.
inline bool membership_scaling(const Polyhedron& q, const LatticeVector& v) {
  if (v.rank() != q.rank) throw Error(ErrorCode::RankMismatch, "scaling membership of " + v.str());
  if (q.empty || v.is_zero()) return false;
  // lambda in (lo, hi] or [lo, hi]; lambda > 0 always.
  Rational lo = 0;
  bool lo_strict = true;
  std::optional<Rational> hi;

  auto raise_lo = [&](const Rational& x, bool strict) {
    if (x > lo || (x == lo && strict && !lo_strict)) {
      lo = x;
      lo_strict = strict;
    }
  };
  auto lower_hi = [&](const Rational& x) {
    if (!hi || x < *hi) hi = x;
  };

  auto apply = [&](const AffineConstraint& c, bool equality) {
    // <n,v> + c*lambda >= 0  (or = 0)
    Rational nv = dot(c.normal, v);
    if (c.offset == 0) return equality ? nv == 0 : nv >= 0;
    Rational bound = -nv / c.offset;
    if (equality) {
      raise_lo(bound, false);
      lower_hi(bound);
    } else if (c.offset > 0) {
      raise_lo(bound, false);
    } else {
      lower_hi(bound);
    }
    return true;
  };
  for (const auto& c : q.inequalities)
    if (!apply(c, false)) return false;
  for (const auto& c : q.equations)
    if (!apply(c, true)) return false;
  if (!hi) return true;
  return lo_strict ? lo < *hi : lo <= *hi;
}

}  // namespace toricdef
