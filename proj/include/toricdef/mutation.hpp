#pragma once

// Fano polytopes, mutation data (w, F), mutations, and the one-parameter
// family of pairs over V = P^2 minus two points.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toricdef/polarized.hpp"

namespace toricdef {

struct FanoPolytope {
  std::size_t rank = 0;
  Polyhedron P;
  std::vector<LatticeVector> vertices;
};

inline FanoPolytope validate_fano(const Polyhedron& P) {
  if (P.empty || !P.is_bounded()) throw Error(ErrorCode::NotFano, "P must be a nonempty polytope");
  if (P.dimension() != static_cast<long>(P.rank)) throw Error(ErrorCode::NotFullDimensional, "P is not full-dimensional");
  if (!P.contains_in_relative_interior(RationalVector(P.rank)))
    throw Error(ErrorCode::OriginNotInterior, "0 is not in the strict interior of P");
  FanoPolytope f{P.rank, P, {}};
  for (const auto& v : P.vertices) {
    if (!is_integral(v) || !is_primitive(to_lattice(v)))
      throw Error(ErrorCode::NonPrimitiveVertex, "vertex " + v.str() + " is not a primitive lattice point");
    f.vertices.push_back(to_lattice(v));
  }
  return f;
}

struct HeightWitness {
  long h = 0;
  /// conv(H_{w,h} cap P cap N).
  Polyhedron slice;
  /// {x : x + (-h) F inside slice}.
  Polyhedron difference;
  /// conv(difference cap N); used by mutate.
  Polyhedron G;
  /// The smallest admissible choice found, for cross-checking independence.
  Polyhedron G_min;
};

struct MutationDatum {
  LatticeVector w;
  Polyhedron F;
  long h_min = 0;
  long h_max = 0;
  /// One entry per h = h_min .. -1.
  std::vector<HeightWitness> witnesses;
};

namespace detail {

inline long to_long(const Integer& x) { return x.get_si(); }

inline std::vector<LatticeVector> points_at_height(const std::vector<LatticeVector>& pts, const LatticeVector& w, long h) {
  std::vector<LatticeVector> out;
  for (const auto& p : pts)
    if (dot(w, p) == h) out.push_back(p);
  return out;
}

inline Polyhedron hull_or_empty(std::size_t rank, const std::vector<LatticeVector>& pts) {
  return pts.empty() ? empty_polyhedron(rank) : convex_hull(rank, pts);
}

inline Polyhedron minkowski_or_empty(const Polyhedron& a, const Polyhedron& b) {
  if (a.empty || b.empty) return empty_polyhedron(a.rank);
  return minkowski_sum(a, b);
}

inline bool subset(const Polyhedron& a, const Polyhedron& b) {
  if (a.empty) return true;
  if (b.empty) return false;
  for (const auto& v : a.vertices)
    if (!b.contains(v)) return false;
  return true;
}

}  // namespace detail

/// Checks the factor condition at every negative height, building the
/// witnesses G_h = conv(D_h cap N) from the Minkowski difference D_h.
inline MutationDatum validate_mutation_datum(const FanoPolytope& fp, const LatticeVector& w, const Polyhedron& F) {
  const std::size_t n = fp.rank;
  if (w.rank() != n || F.rank != n) throw Error(ErrorCode::RankMismatch, "w and F must live in rank " + std::to_string(n));
  if (w.is_zero()) throw Error(ErrorCode::ZeroVector, "w is zero");
  if (!is_primitive(w)) throw Error(ErrorCode::InvalidInput, "w " + w.str() + " is not primitive");
  if (F.empty || !F.is_bounded() || !F.is_lattice()) throw Error(ErrorCode::InvalidInput, "F must be a nonempty lattice polytope");
  for (const auto& f : F.vertices)
    if (dot(w, f) != 0) throw Error(ErrorCode::InvalidInput, "vertex " + f.str() + " of F is not in w-perp");

  MutationDatum d;
  d.w = w;
  d.F = F;
  d.h_min = detail::to_long(floor_of(min_functional(fp.P, w).min));
  d.h_max = detail::to_long(floor_of(max_functional(fp.P, w)));
  const auto pts = lattice_points(fp.P);
  for (long h = d.h_min; h < 0; ++h) {
    HeightWitness hw;
    hw.h = h;
    hw.slice = detail::hull_or_empty(n, detail::points_at_height(pts, w, h));
    const Integer s = -h;
    if (hw.slice.empty) {
      hw.difference = empty_polyhedron(n);
    } else {
      hw.difference = hw.slice;
      for (const auto& f : F.vertices) {
        RationalVector shift = -(Rational(s) * f);
        hw.difference = intersect(hw.difference, translate(hw.slice, shift));
      }
    }
    hw.G = hw.difference.empty ? empty_polyhedron(n) : detail::hull_or_empty(n, lattice_points(hw.difference));
    const Polyhedron sF = scale(F, Rational(s));

    auto vertices_here = detail::points_at_height(fp.vertices, w, h);
    Polyhedron covered = detail::minkowski_or_empty(hw.G, sF);
    for (const auto& p : vertices_here)
      if (!covered.contains(p))
        throw Error(ErrorCode::NoFactorAtHeight,
                    "h=" + std::to_string(h) + ": vertex " + p.str() + " not in G_h + " + s.get_str() + "F");
    if (!detail::subset(covered, hw.slice))
      throw Error(ErrorCode::NoFactorAtHeight, "h=" + std::to_string(h) + ": G_h + (-h)F leaves the slice");

    // minimal choice: lattice points of D_h whose translate of (-h)F meets a vertex
    std::vector<LatticeVector> needed;
    if (!hw.G.empty)
      for (const auto& g : lattice_points(hw.difference))
        for (const auto& p : vertices_here)
          if (translate(sF, to_rational(g)).contains(p)) {
            needed.push_back(g);
            break;
          }
    hw.G_min = detail::hull_or_empty(n, needed);
    Polyhedron covered_min = detail::minkowski_or_empty(hw.G_min, sF);
    bool admissible = std::all_of(vertices_here.begin(), vertices_here.end(),
                                  [&](const LatticeVector& p) { return covered_min.contains(p); });
    if (!admissible) hw.G_min = hw.G;
    d.witnesses.push_back(std::move(hw));
  }
  return d;
}

/// mut_{w,F}(P) for a given choice of witnesses (one per negative height).
inline Polyhedron mutate_with(const FanoPolytope& fp, const MutationDatum& d, const std::vector<Polyhedron>& G) {
  const std::size_t n = fp.rank;
  std::vector<RationalVector> pts;
  for (const auto& g : G)
    for (const auto& v : g.vertices) pts.push_back(v);
  const auto lattice = lattice_points(fp.P);
  for (long h = 0; h <= d.h_max; ++h)
    for (const auto& x : detail::points_at_height(lattice, d.w, h))
      for (const auto& f : d.F.vertices) pts.push_back(to_rational(x) + Rational(h) * f);
  return convex_hull(n, pts);
}

/// Mutation with the maximal witnesses; cross-checked against the minimal ones.
inline FanoPolytope mutate(const FanoPolytope& fp, const MutationDatum& d) {
  std::vector<Polyhedron> gmax, gmin;
  for (const auto& hw : d.witnesses) {
    gmax.push_back(hw.G);
    gmin.push_back(hw.G_min);
  }
  Polyhedron result = mutate_with(fp, d, gmax);
  if (!polyhedron_equal(result, mutate_with(fp, d, gmin)))
    throw Error(ErrorCode::StructureViolation, "mutation depends on the choice of witnesses");
  return validate_fano(result);
}

/// Homogeneous point [a:b:c] of P^2 with integer coordinates, gcd 1, first
/// nonzero coordinate positive.
struct ParameterPoint {
  Integer a, b, c;

  friend bool operator==(const ParameterPoint&, const ParameterPoint&) = default;
  std::string str() const { return "[" + a.get_str() + ":" + b.get_str() + ":" + c.get_str() + "]"; }
};

inline ParameterPoint normalize_point(const Rational& a, const Rational& b, const Rational& c) {
  Integer den = lcm_of(lcm_of(a.get_den(), b.get_den()), c.get_den());
  Integer x = Rational(a * den).get_num(), y = Rational(b * den).get_num(), z = Rational(c * den).get_num();
  Integer g = gcd_of(gcd_of(x, y), z);
  if (g == 0) throw Error(ErrorCode::InvalidInput, "[0:0:0] is not a point");
  x /= g;
  y /= g;
  z /= g;
  Integer first = x != 0 ? x : (y != 0 ? y : z);
  if (first < 0) {
    x = -x;
    y = -y;
    z = -z;
  }
  return ParameterPoint{x, y, z};
}

inline bool in_V(const ParameterPoint& p) { return !(p.b == 0 && p.c == 0) && !(p.a == 0 && p.c == 0); }

struct MutationFamily {
  FanoPolytope P;
  FanoPolytope P_prime;
  MutationDatum datum;
  std::vector<LatticeVector> nonnegative_vertices;  // vert(P) with <w,p> >= 0
  std::vector<LatticeVector> negative_vertices;     // vert(P') with <w,p'> < 0
  Polyhedron Q_tilde;
  std::vector<LatticeVector> predicted_rays;
  CoxSystem cox;
  /// Class of each variable; for a rank-one torsion-free group the positive weights.
  std::vector<Integer> weights;
  CoxPolynomial trinomial;
  CoxPolynomial monomial;
  /// The toric pair over (N + Z e0, cone(P + e0)) with datum (G + F, G, F, w).
  ProjectiveTilde induced;
  /// Binomials of the two toric fibres in the family's variables.
  CoxPolynomial fiber_P;
  std::optional<CoxPolynomial> fiber_P_prime;
  /// Whether mut_{-w,F}(P') = P was confirmed.
  bool inverse_recovers_P = false;
};

namespace detail {

/// Rewrites f from the variable order of `from` into that of `to`.
inline CoxPolynomial remap(const CoxPolynomial& f, const std::vector<LatticeVector>& from,
                           const std::vector<LatticeVector>& to) {
  CoxPolynomial g;
  for (const auto& t : f.terms) {
    Term s{t.coeff, std::vector<Integer>(to.size())};
    for (std::size_t j = 0; j < from.size(); ++j) {
      auto it = std::find(to.begin(), to.end(), from[j]);
      if (it == to.end()) throw Error(ErrorCode::RayPredictionMismatch, "ray " + from[j].str() + " has no counterpart");
      s.exps[static_cast<std::size_t>(it - to.begin())] = t.exps[j];
    }
    g.terms.push_back(std::move(s));
  }
  return g;
}

inline std::vector<LatticeVector> sorted(std::vector<LatticeVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline Term scaled(const Term& t, Coefficient c) { return Term{std::move(c), t.exps}; }

/// Rank n + 1 datum (G + F, G, F, w) over cone(P + e0).
inline DeformationDatum induced_datum(const FanoPolytope& fp, const MutationDatum& d, const Cone& tau) {
  const std::size_t n = fp.rank;
  std::vector<RationalVector> gpts;
  for (const auto& hw : d.witnesses)
    for (const auto& g : hw.G.vertices) {
      RationalVector lifted = concat(g, RationalVector(std::vector<Rational>{1}));
      gpts.push_back(make_rational(1, -hw.h) * lifted);
    }
  std::vector<LatticeVector> fpts;
  for (const auto& f : d.F.vertices) fpts.push_back(concat(to_lattice(f), LatticeVector{0}));
  DeformationDatum dd;
  dd.sigma = tau;
  dd.summands = {convex_hull(n + 1, gpts), convex_hull(n + 1, fpts)};
  dd.w = concat(d.w, LatticeVector{0});
  dd.boundary = true;
  return dd;
}

struct FamilyCore {
  FanoPolytope P_prime;
  std::vector<LatticeVector> nonneg, neg, rays, predicted;
  Polyhedron Q_tilde;
  CoxSystem cox;
  CoxPolynomial trinomial, monomial;
  ProjectiveTilde induced;
};

inline FamilyCore family_core(const FanoPolytope& fp, const MutationDatum& d, const AliasTable& aliases) {
  const std::size_t n = fp.rank;
  FamilyCore c;
  c.P_prime = mutate(fp, d);
  for (const auto& p : fp.vertices)
    if (dot(d.w, p) >= 0) c.nonneg.push_back(p);
  for (const auto& p : c.P_prime.vertices)
    if (dot(d.w, p) < 0) c.neg.push_back(p);

  std::vector<AffineConstraint> ineqs;
  for (const auto& p : c.nonneg) ineqs.push_back({concat(p, LatticeVector{0}), 1});
  for (const auto& p : c.neg) ineqs.push_back({concat(p, LatticeVector(std::vector<Integer>{dot(d.w, p)})), 1});
  for (const auto& f : d.F.vertices) ineqs.push_back({concat(to_lattice(f), LatticeVector{1}), 0});
  c.Q_tilde = polyhedron_from_inequalities(n + 1, ineqs);
  if (c.Q_tilde.empty || !c.Q_tilde.is_bounded() || c.Q_tilde.dimension() != static_cast<long>(n + 1))
    throw Error(ErrorCode::RayPredictionMismatch, "Q~ is not a full-dimensional polytope");
  for (const auto& ie : ineqs) c.predicted.push_back(primitive(ie.normal));
  c.rays = normal_fan(c.Q_tilde).rays;
  if (sorted(c.rays) != sorted(c.predicted))
    throw Error(ErrorCode::RayPredictionMismatch, "normal fan of Q~ differs from the predicted ray list");

  c.cox = make_cox_system(c.rays, n + 1, aliases, {"a", "b", "c"});
  std::vector<Integer> ea(c.rays.size()), eb(c.rays.size()), ec(c.rays.size()), em(c.rays.size());
  auto idx = [&](const LatticeVector& r) { return *c.cox.index_of(r); };
  for (const auto& p : c.nonneg) {
    ea[idx(concat(p, LatticeVector{0}))] += dot(d.w, p);
    em[idx(concat(p, LatticeVector{0}))] = 1;
  }
  for (const auto& p : c.neg) {
    LatticeVector r = concat(p, LatticeVector(std::vector<Integer>{dot(d.w, p)}));
    eb[idx(r)] += -dot(d.w, p);
    em[idx(r)] = 1;
  }
  for (const auto& f : d.F.vertices) ec[idx(concat(to_lattice(f), LatticeVector{1}))] += 1;
  c.trinomial = CoxPolynomial{{Term{{1, "a"}, ea}, Term{{1, "b"}, eb}, Term{{1, "c"}, ec}}};
  c.monomial = monomial(em);
  if (!is_homogeneous(c.cox, c.trinomial)) throw Error(ErrorCode::StructureViolation, "family trinomial is not homogeneous");
  if (!disjoint_support_regular_sequence({c.trinomial}, c.monomial))
    throw Error(ErrorCode::StructureViolation, "family trinomial and monomial share a factor");

  // cross-check against the toric pair construction over cone(P + e0)
  PolarizedToricVariety v = cone_from_polytope(fp.P);
  DeformationDatum dd = induced_datum(fp, d, v.tau);
  ValidationReport rep = validate_datum(dd);
  if (!rep.boundary_valid()) throw Error(ErrorCode::StructureViolation, "induced datum invalid: " + rep.first_failure());
  c.induced = projective_tilde(v, dd);
  if (sorted(c.induced.ambient.fan.rays) != sorted(c.rays))
    throw Error(ErrorCode::RayPredictionMismatch, "induced fan differs from the family fan");
  // a = -t1, b = -1, c = 1 turns the family trinomial into the induced one
  CoxPolynomial expected{{scaled(c.trinomial.terms[0], {-1, "t1"}), scaled(c.trinomial.terms[1], {-1, ""}),
                          scaled(c.trinomial.terms[2], {1, ""})}};
  CoxPolynomial induced_tri = remap(c.induced.trinomials.at(0), c.induced.ambient.fan.rays, c.rays);
  if (!same_terms(specialize(expected, {}), specialize(induced_tri, {})))
    throw Error(ErrorCode::StructureViolation, "family trinomial differs from the induced trinomial");
  CoxPolynomial induced_mono = remap(require_boundary_monomial(c.induced).monomial, c.induced.ambient.fan.rays, c.rays);
  if (!(induced_mono == c.monomial)) throw Error(ErrorCode::StructureViolation, "family monomial differs from the induced monomial");
  return c;
}

}  // namespace detail

/// Builds the family and checks it against the pair construction; also runs
/// the inverse mutation (-w, F) from P' to locate the fibre of P'.
inline MutationFamily mutation_family(const FanoPolytope& fp, const MutationDatum& d, const AliasTable& aliases = {}) {
  const std::size_t n = fp.rank;
  detail::FamilyCore c = detail::family_core(fp, d, aliases);
  MutationFamily fam;
  fam.P = fp;
  fam.P_prime = c.P_prime;
  fam.datum = d;
  fam.nonnegative_vertices = c.nonneg;
  fam.negative_vertices = c.neg;
  fam.Q_tilde = c.Q_tilde;
  fam.predicted_rays = c.predicted;
  fam.cox = c.cox;
  fam.trinomial = c.trinomial;
  fam.monomial = c.monomial;
  fam.induced = c.induced;

  const auto& group = fam.cox.grading.group;
  for (std::size_t j = 0; j < fam.cox.size(); ++j) {
    std::vector<Integer> e(fam.cox.size());
    e[j] = 1;
    GroupElement g = fam.cox.degree(e);
    fam.weights.push_back(group.free_rank == 1 && group.torsion.empty() ? g.free[0] : Integer(0));
  }
  if (!fam.weights.empty() && fam.weights.front() < 0)
    for (auto& x : fam.weights) x = -x;

  fam.fiber_P = detail::remap(c.induced.binomials.at(0), c.induced.ambient.fan.rays, c.rays);

  try {
    MutationDatum inv = validate_mutation_datum(c.P_prime, -d.w, d.F);
    FanoPolytope back = mutate(c.P_prime, inv);
    fam.inverse_recovers_P = polyhedron_equal(back.P, fp.P);
    detail::FamilyCore ic = detail::family_core(c.P_prime, inv, {});
    // v + k e1 -> v + (k + <w,v>) e1 identifies the two ambient fans
    std::vector<LatticeVector> mapped;
    for (const auto& r : ic.induced.ambient.fan.rays) {
      LatticeVector m = r;
      m[n] += dot(d.w, slice(r, 0, n));
      mapped.push_back(m);
    }
    if (detail::sorted(mapped) == detail::sorted(c.rays))
      fam.fiber_P_prime = detail::remap(ic.induced.binomials.at(0), mapped, c.rays);
  } catch (const Error&) {
    fam.inverse_recovers_P = false;
  }
  return fam;
}

enum class FiberKind { ToricP, ToricPPrime, Generic };

inline const char* to_string(FiberKind k) {
  switch (k) {
    case FiberKind::ToricP: return "X_P";
    case FiberKind::ToricPPrime: return "X_P'";
    case FiberKind::Generic: return "generic";
  }
  return "?";
}

struct FiberReport {
  ParameterPoint point;
  FiberKind kind = FiberKind::Generic;
  CoxPolynomial trinomial;
  CoxPolynomial monomial;
  /// At the two toric points: agreement with the binomial of the toric pair.
  bool matches_toric = true;
};

inline FiberReport specialize_fiber(const MutationFamily& fam, const Rational& a, const Rational& b, const Rational& c) {
  FiberReport r;
  r.point = normalize_point(a, b, c);
  if (!in_V(r.point)) throw Error(ErrorCode::OutsideV, r.point.str() + " is a deleted point");
  r.trinomial = specialize(fam.trinomial, {{"a", r.point.a}, {"b", r.point.b}, {"c", r.point.c}});
  r.monomial = fam.monomial;
  auto agrees = [&](const CoxPolynomial& g) { return same_terms(r.trinomial, g) || same_terms(r.trinomial, negate(g)); };
  if (r.point == ParameterPoint{0, 1, -1}) {
    r.kind = FiberKind::ToricP;
    r.matches_toric = agrees(fam.fiber_P);
  } else if (r.point == ParameterPoint{1, 0, -1}) {
    r.kind = FiberKind::ToricPPrime;
    r.matches_toric = fam.fiber_P_prime && agrees(*fam.fiber_P_prime);
  }
  return r;
}

}  // namespace toricdef
