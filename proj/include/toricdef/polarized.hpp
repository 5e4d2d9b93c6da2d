#pragma once

// Polarised projective toric varieties as cones tau in N + Z e_0 with e_0
// interior, and the projective form of the sigma~ construction.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toricdef/cox.hpp"

namespace toricdef {

enum class DivisorClass { Cartier, QCartierZDivisor, QCartierQDivisor };

inline const char* to_string(DivisorClass c) {
  switch (c) {
    case DivisorClass::Cartier: return "Cartier";
    case DivisorClass::QCartierZDivisor: return "QCartierZDivisor";
    case DivisorClass::QCartierQDivisor: return "QCartierQDivisor";
  }
  return "?";
}

/// xi_rho = b * rho - a * e_0 with phi(rho) = a / b.
struct RayData {
  Integer a;
  Integer b;
};

/// Primitive inner normal u + h e_0* of a facet of tau (h > 0), and the fan
/// rays on that facet.
struct FacetData {
  LatticeVector u;
  Integer h;
  std::vector<std::size_t> rays;
};

struct PolarizedToricVariety {
  std::size_t n = 0;
  /// Last coordinate is e_0.
  Cone tau;
  /// fan.rays[j] is the N-part of tau.rays[j], made primitive.
  Fan fan;
  std::vector<Rational> phi_values;
  std::vector<RayData> ray_data;
  /// facets[c] belongs to fan.maximal_cones[c].
  std::vector<FacetData> facets;

  LatticeVector e0() const { return unit_vector(n + 1, n); }
};

/// tau must be strongly convex, of full dimension n + 1, with e_0 interior.
inline PolarizedToricVariety polarized_from_tau(const Cone& tau) {
  if (tau.rank < 2) throw Error(ErrorCode::InvalidInput, "tau needs rank at least 2");
  const std::size_t n = tau.rank - 1;
  if (!tau.is_strongly_convex()) throw Error(ErrorCode::NotStronglyConvex, "tau contains a line");
  if (!tau.is_full_dimensional()) throw Error(ErrorCode::NotFullDimensional, "tau has dimension " + std::to_string(tau.dimension()));
  PolarizedToricVariety v;
  v.n = n;
  v.tau = tau;
  if (!tau.contains_in_relative_interior(v.e0())) throw Error(ErrorCode::InvalidInput, "e0 is not interior to tau");

  v.fan.rank = n;
  for (const auto& xi : tau.rays) {
    LatticeVector part = slice(xi, 0, n);
    Integer b = content(part);
    v.fan.rays.push_back(primitive(part));
    v.ray_data.push_back(RayData{-xi[n], b});
    v.phi_values.push_back(make_rational(-xi[n], b));
  }
  for (const auto& f : tau.facets) {
    FacetData fd{slice(f, 0, n), f[n], {}};
    for (std::size_t j = 0; j < tau.rays.size(); ++j)
      if (dot(f, tau.rays[j]) == 0) fd.rays.push_back(j);
    v.fan.maximal_cones.push_back(fd.rays);
    v.facets.push_back(std::move(fd));
  }
  return v;
}

/// tau = cone over P x {1}. P must be a full-dimensional polytope with the
/// origin in its interior.
inline PolarizedToricVariety cone_from_polytope(const Polyhedron& P) {
  if (P.empty || !P.is_bounded()) throw Error(ErrorCode::InvalidInput, "P must be a nonempty polytope");
  if (P.dimension() != static_cast<long>(P.rank)) throw Error(ErrorCode::NotFullDimensional, "P is not full-dimensional");
  if (!P.contains_in_relative_interior(RationalVector(P.rank)))
    throw Error(ErrorCode::OriginNotInterior, "0 is not in the interior of P");
  std::vector<LatticeVector> gens;
  for (const auto& v : P.vertices) gens.push_back(primitive(concat(v, RationalVector(std::vector<Rational>{1}))));
  return polarized_from_tau(cone_from_generators(P.rank + 1, gens));
}

/// tau with rays rho - phi(rho) e_0. If fan.maximal_cones is nonempty, each
/// must be the projection of a facet of tau (strict convexity of phi).
inline PolarizedToricVariety polarized_from_fan(const Fan& fan, const std::vector<Rational>& phi) {
  if (phi.size() != fan.rays.size()) throw Error(ErrorCode::RankMismatch, "one phi value per ray expected");
  const std::size_t n = fan.rank;
  std::vector<LatticeVector> gens;
  for (std::size_t j = 0; j < fan.rays.size(); ++j) {
    if (fan.rays[j].is_zero()) throw Error(ErrorCode::ZeroVector, "zero fan ray");
    RationalVector xi = concat(to_rational(primitive(fan.rays[j])), RationalVector(std::vector<Rational>{-phi[j]}));
    gens.push_back(primitive(xi));
  }
  Cone tau = cone_from_generators(n + 1, gens);
  for (const auto& g : gens)
    if (std::find(tau.rays.begin(), tau.rays.end(), g) == tau.rays.end())
      throw Error(ErrorCode::InvalidInput, "support function not strictly convex at " + g.str());
  PolarizedToricVariety v = polarized_from_tau(tau);

  std::vector<LatticeVector> given;
  for (const auto& r : fan.rays) given.push_back(primitive(r));
  std::vector<LatticeVector> a = given, b = v.fan.rays;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw Error(ErrorCode::InvalidInput, "fan rays differ from the projection of tau");
  if (!fan.maximal_cones.empty()) {
    auto as_set = [](std::vector<LatticeVector> rs) {
      std::sort(rs.begin(), rs.end());
      return rs;
    };
    std::vector<std::vector<LatticeVector>> ours;
    for (const auto& c : v.fan.maximal_cones) {
      std::vector<LatticeVector> rs;
      for (auto j : c) rs.push_back(v.fan.rays[j]);
      ours.push_back(as_set(rs));
    }
    for (const auto& c : fan.maximal_cones) {
      std::vector<LatticeVector> rs;
      for (auto j : c) rs.push_back(given.at(j));
      if (std::find(ours.begin(), ours.end(), as_set(rs)) == ours.end())
        throw Error(ErrorCode::InvalidInput, "support function not linear and strictly convex on a maximal cone");
    }
  }
  return v;
}

/// {u : u + e_0* in tau^vee}.
inline Polyhedron polytope_in_M(const PolarizedToricVariety& v) {
  std::vector<AffineConstraint> ineqs;
  for (const auto& xi : v.tau.rays) ineqs.push_back(AffineConstraint{slice(xi, 0, v.n), Rational(xi[v.n])});
  return polyhedron_from_inequalities(v.n, ineqs);
}

inline DivisorClass classify_divisor(const PolarizedToricVariety& v) {
  bool cartier = std::all_of(v.facets.begin(), v.facets.end(), [](const FacetData& f) { return f.h == 1; });
  if (cartier) return DivisorClass::Cartier;
  bool z = std::all_of(v.ray_data.begin(), v.ray_data.end(), [](const RayData& r) { return r.b == 1; });
  return z ? DivisorClass::QCartierZDivisor : DivisorClass::QCartierQDivisor;
}

/// Exponents b_rho of x_rho -> x_{xi_rho}^{b_rho}, in fan ray order.
inline std::vector<Integer> cox_comparison(const PolarizedToricVariety& v) {
  std::vector<Integer> b;
  for (const auto& r : v.ray_data) b.push_back(r.b);
  return b;
}

/// Reorders coordinates so that index `from` becomes the last one.
inline LatticeVector move_to_end(const LatticeVector& x, std::size_t from) {
  LatticeVector y(x.rank());
  std::size_t p = 0;
  for (std::size_t i = 0; i < x.rank(); ++i)
    if (i != from) y[p++] = x[i];
  y[x.rank() - 1] = x[from];
  return y;
}

struct ProjectiveTilde {
  TildeData tilde;
  /// The variety of tau~, with coordinates reordered to N + Z^k + Z e_0.
  PolarizedToricVariety ambient;
  Polyhedron Q_tilde;
  CoxSystem cox;
  /// pairings[j][i] = <e_{i+1}*, rho_j> over the rays of the ambient fan.
  std::vector<std::vector<Integer>> pairings;
  std::vector<Integer> w_pairings;
  std::vector<CoxPolynomial> binomials;
  std::vector<CoxPolynomial> trinomials;
  std::optional<BoundaryMonomial> monomial;
  /// Why the monomial was withheld.
  std::string monomial_refusal;
};

/// d is a datum over tau = v.tau (rank n + 1) with w in M. The boundary
/// monomial is emitted only for a boundary datum and a Z-divisor.
inline ProjectiveTilde projective_tilde(const PolarizedToricVariety& v, const DeformationDatum& d,
                                        const AliasTable& aliases = {}) {
  const std::size_t n = v.n;
  if (d.n() != n + 1) throw Error(ErrorCode::RankMismatch, "datum must live in N + Z e0");
  if (!(d.sigma == v.tau)) throw Error(ErrorCode::InvalidDatum, "datum cone differs from tau");
  if (d.w.rank() != n + 1 || d.w[n] != 0) throw Error(ErrorCode::InvalidInput, "w has a nonzero e0* component");

  ProjectiveTilde out;
  out.tilde = build_tilde(d);
  require_tilde_structure(out.tilde, d);
  const std::size_t k = out.tilde.k;
  const Cone& tt = out.tilde.sigma_tilde;
  if (!tt.contains_in_relative_interior(unit_vector(n + 1 + k, n)))
    throw Error(ErrorCode::StructureViolation, "e0 is not interior to tau~");

  std::vector<LatticeVector> moved;
  for (const auto& r : tt.rays) moved.push_back(move_to_end(r, n));
  out.ambient = polarized_from_tau(cone_from_generators(n + k + 1, moved));
  out.Q_tilde = polytope_in_M(out.ambient);

  // the normal fan of Q~ must be the projected fan
  Fan nf = normal_fan(out.Q_tilde);
  std::vector<LatticeVector> a = nf.rays, b = out.ambient.fan.rays;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw Error(ErrorCode::StructureViolation, "normal fan of Q~ differs from the projection of tau~");

  LatticeVector wt = move_to_end(out.tilde.w_tilde, n);
  LatticeVector wt_n = slice(wt, 0, n + k);
  for (const auto& rho : out.ambient.fan.rays) {
    std::vector<Integer> row;
    for (std::size_t i = 0; i < k; ++i) row.push_back(rho[n + i]);
    out.pairings.push_back(row);
    out.w_pairings.push_back(dot(wt_n, rho));
  }
  out.cox = make_cox_system(out.ambient.fan.rays, n + k, aliases, trinomial_parameters(k));
  out.binomials = binomials_from_pairings(out.pairings, k);
  out.trinomials = trinomials_from_pairings(out.ambient.fan.rays, out.pairings, out.w_pairings, k);
  if (!d.boundary) {
    out.monomial_refusal = "datum is not a boundary datum";
  } else if (classify_divisor(v) == DivisorClass::QCartierQDivisor) {
    out.monomial_refusal = "polarisation is not a Z-divisor";
  } else if (!validate_datum(d).boundary_valid()) {
    out.monomial_refusal = "boundary condition fails: " + validate_datum(d).first_failure();
  } else {
    out.monomial = boundary_monomial_from_pairings(out.pairings);
  }
  return out;
}

inline const BoundaryMonomial& require_boundary_monomial(const ProjectiveTilde& p) {
  if (!p.monomial) throw Error(ErrorCode::QDivisorBoundary, p.monomial_refusal);
  return *p.monomial;
}

}  // namespace toricdef
