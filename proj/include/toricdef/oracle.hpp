#pragma once

// Brute-force, bounded-degree checks on semigroups of lattice points of
// cones: Hilbert bases, interior points, and ideal equalities in Cox
// coordinates certified by explicit monomial factorizations. Nothing here
// performs general polynomial reduction.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toricdef/cox.hpp"

namespace toricdef {

namespace detail {

inline void require_pointed_full(const Cone& c) {
  if (!c.is_strongly_convex()) throw Error(ErrorCode::NotStronglyConvex, "cone contains a line");
  if (!c.is_full_dimensional()) throw Error(ErrorCode::NotFullDimensional, "cone is not full-dimensional");
}

/// Lattice points u of c with functional(u) <= bound.
inline std::vector<LatticeVector> points_below(const Cone& c, const LatticeVector& functional, const Integer& bound) {
  std::vector<AffineConstraint> ineqs;
  for (const auto& f : c.facets) ineqs.push_back(AffineConstraint{f, Rational(0)});
  ineqs.push_back(AffineConstraint{-functional, Rational(bound)});
  auto pts = lattice_points(polyhedron_from_inequalities(c.rank, ineqs));
  std::stable_sort(pts.begin(), pts.end(), [&](const LatticeVector& a, const LatticeVector& b) {
    return dot(functional, a) < dot(functional, b);
  });
  return pts;
}

}  // namespace detail

/// Sum of the facet normals: strictly positive on a pointed full cone.
inline LatticeVector facet_sum_functional(const Cone& c) {
  LatticeVector s(c.rank);
  for (const auto& f : c.facets) s = s + f;
  return s;
}

struct HilbertBasis {
  Cone cone;
  std::vector<LatticeVector> generators;
  LatticeVector functional;
  Integer bound;
  /// The bound is below the largest degree a basis element can have, so
  /// elements may be missing.
  bool may_be_truncated = false;
};

/// Degree below which every Hilbert basis element lies: the sum of the
/// `rank` largest ray degrees (each element sits in a half-open
/// parallelepiped of a simplicial subcone).
inline Integer hilbert_degree_bound(const Cone& c, const LatticeVector& functional) {
  std::vector<Integer> deg;
  for (const auto& r : c.rays) deg.push_back(dot(functional, r));
  std::sort(deg.rbegin(), deg.rend());
  Integer s = 0;
  for (std::size_t i = 0; i < std::min(c.rank, deg.size()); ++i) s += deg[i];
  return s;
}

/// Irreducible lattice points of c up to the bound, by subtracting earlier
/// irreducibles from each candidate in degree order.
inline HilbertBasis hilbert_basis(const Cone& c, const LatticeVector& functional, const Integer& bound) {
  detail::require_pointed_full(c);
  if (functional.rank() != c.rank) throw Error(ErrorCode::RankMismatch, "degree functional");
  for (const auto& r : c.rays)
    if (dot(functional, r) <= 0) throw Error(ErrorCode::InvalidInput, "degree functional not positive on ray " + r.str());
  HilbertBasis hb{c, {}, functional, bound, bound < hilbert_degree_bound(c, functional) - 1};
  for (const auto& p : detail::points_below(c, functional, bound)) {
    if (p.is_zero()) continue;
    bool reducible = std::any_of(hb.generators.begin(), hb.generators.end(),
                                 [&](const LatticeVector& g) { return c.contains(p - g); });
    if (!reducible) hb.generators.push_back(p);
  }
  std::sort(hb.generators.begin(), hb.generators.end());
  return hb;
}

inline HilbertBasis hilbert_basis(const Cone& c, const Integer& bound = 12) {
  return hilbert_basis(c, facet_sum_functional(c), bound);
}

/// Second construction: grow a generating set from the rays, closing under
/// sums up to the bound and adopting the lowest-degree point not yet
/// reached. Used to cross-check hilbert_basis.
inline std::vector<LatticeVector> hilbert_basis_by_saturation(const Cone& c, const LatticeVector& functional,
                                                              const Integer& bound) {
  detail::require_pointed_full(c);
  auto pts = detail::points_below(c, functional, bound);
  std::map<LatticeVector, bool> reached;
  for (const auto& p : pts) reached[p] = p.is_zero();
  std::vector<LatticeVector> gens;
  for (const auto& r : c.rays)
    if (dot(functional, r) <= bound) gens.push_back(r);
  for (;;) {
    // close under adding generators; points come in degree order
    for (const auto& p : pts) {
      if (!reached[p]) continue;
      for (const auto& g : gens) {
        auto it = reached.find(p + g);
        if (it != reached.end()) it->second = true;
      }
    }
    auto missing = std::find_if(pts.begin(), pts.end(), [&](const LatticeVector& p) { return !reached[p]; });
    if (missing == pts.end()) break;
    gens.push_back(*missing);
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  // drop generators that are sums of two nonzero reached points
  std::vector<LatticeVector> minimal;
  for (const auto& g : gens) {
    bool sum = false;
    for (const auto& p : pts)
      if (!p.is_zero() && !(p == g) && c.contains(g - p)) sum = true;
    if (!sum) minimal.push_back(g);
  }
  return minimal;
}

/// Lattice points with every facet pairing in [1, bound].
inline std::vector<LatticeVector> interior_points(const Cone& c, const Integer& bound) {
  detail::require_pointed_full(c);
  std::vector<AffineConstraint> ineqs;
  for (const auto& f : c.facets) {
    ineqs.push_back(AffineConstraint{f, Rational(-1)});
    ineqs.push_back(AffineConstraint{-f, Rational(bound)});
  }
  return lattice_points(polyhedron_from_inequalities(c.rank, ineqs));
}

/// Every facet pairing strictly positive (c pointed and full-dimensional).
inline bool is_interior_point(const Cone& c, const LatticeVector& u) {
  return !c.facets.empty() && c.contains_in_relative_interior(u);
}

// ---------------------------------------------------------------------------
// Cox-coordinate certificates over sigma~.

using Exponents = std::vector<Integer>;

/// Exponent vector of Cox(chi^u): pairings with the rays of sigma~.
inline Exponents cox_exponents(const TildeData& t, const LatticeVector& u) {
  Exponents e;
  for (const auto& r : t.rays) e.push_back(dot(u, r));
  return e;
}

struct CoxMonomials {
  std::vector<Exponents> y, z;
  Exponents z0, z_boundary;
};

inline CoxMonomials cox_monomials(const TildeData& t) {
  CoxMonomials m;
  for (std::size_t i = 0; i < t.k; ++i) {
    auto pn = detail::split_pairing(t.pairings, i);
    m.y.push_back(pn.y);
    m.z.push_back(pn.z);
  }
  m.z0 = t.k > 0 ? m.z[0] : Exponents(t.rays.size());
  m.z_boundary = boundary_monomial(t).monomial.terms.front().exps;
  return m;
}

namespace detail {

inline Exponents add(Exponents a, const Exponents& b, const Integer& times = 1) {
  for (std::size_t j = 0; j < a.size(); ++j) a[j] += times * b[j];
  return a;
}

inline bool nonnegative(const Exponents& e) {
  return std::all_of(e.begin(), e.end(), [](const Integer& x) { return x >= 0; });
}

inline bool divides(const Exponents& d, const Exponents& m) {
  for (std::size_t j = 0; j < d.size(); ++j)
    if (d[j] > m[j]) return false;
  return true;
}

using SparsePoly = std::map<Exponents, Integer>;

inline void accumulate(SparsePoly& f, const Exponents& e, const Integer& c) {
  Integer& slot = f[e];
  slot += c;
  if (slot == 0) f.erase(e);
}

}  // namespace detail

/// Certificate that Cox(chi^r) - Cox(chi^s) lies in (y_i - z_i): with
/// a = r - s on the e_i* coordinates and q = r - sum a_i^+ e_i*,
///   Cox(chi^r) = p_r * prod y_i^{a_i^+},  Cox(chi^q) = p_r * prod z_i^{a_i^+},
///   Cox(chi^s) = p_s * prod y_i^{a_i^-},  Cox(chi^q) = p_s * prod z_i^{a_i^-}.
struct KernelWitness {
  LatticeVector r, s, q;
  std::vector<Integer> a;
  Exponents p_r, p_s;
  /// Cofactors f_i with Cox(chi^r) - Cox(chi^s) = sum f_i (y_i - z_i).
  std::vector<detail::SparsePoly> cofactors;
};

namespace detail {

/// Cofactors expressing p * (prod y_i^{c_i} - prod z_i^{c_i}) in (y_i - z_i),
/// by swapping one y_i for z_i at a time.
inline void telescope(const CoxMonomials& m, const Exponents& p, const std::vector<Integer>& c, const Integer& sign,
                      std::vector<SparsePoly>& cofactors) {
  Exponents cur = p;
  for (std::size_t i = 0; i < c.size(); ++i) cur = add(cur, m.y[i], c[i]);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (Integer step = 0; step < c[i]; ++step) {
      Exponents base = add(cur, m.y[i], -1);
      accumulate(cofactors[i], base, sign);
      cur = add(base, m.z[i]);
    }
}

}  // namespace detail

/// Builds the witness for r, s in sigma~^vee with equal N-projection; nullopt
/// when some step of the recipe fails (which the check reports).
inline std::optional<KernelWitness> kernel_witness(const TildeData& t, const CoxMonomials& m, const LatticeVector& r,
                                                   const LatticeVector& s) {
  const std::size_t n = t.n, k = t.k;
  for (std::size_t j = 0; j < n; ++j)
    if (r[j] != s[j]) throw Error(ErrorCode::InvalidInput, "characters differ on N");
  KernelWitness w{r, s, r, std::vector<Integer>(k), {}, {}, std::vector<detail::SparsePoly>(k)};
  std::vector<Integer> plus(k), minus(k);
  for (std::size_t i = 0; i < k; ++i) {
    w.a[i] = r[n + i] - s[n + i];
    if (w.a[i] > 0) plus[i] = w.a[i];
    else minus[i] = -w.a[i];
    w.q[n + i] -= plus[i];
  }
  Exponents cq = cox_exponents(t, w.q);
  if (!detail::nonnegative(cq)) return std::nullopt;
  w.p_r = cox_exponents(t, r);
  w.p_s = cox_exponents(t, s);
  for (std::size_t i = 0; i < k; ++i) {
    w.p_r = detail::add(w.p_r, m.y[i], -plus[i]);
    w.p_s = detail::add(w.p_s, m.y[i], -minus[i]);
  }
  if (!detail::nonnegative(w.p_r) || !detail::nonnegative(w.p_s)) return std::nullopt;
  detail::telescope(m, w.p_r, plus, 1, w.cofactors);
  detail::telescope(m, w.p_s, minus, -1, w.cofactors);
  return w;
}

inline std::optional<KernelWitness> kernel_witness(const TildeData& t, const LatticeVector& r, const LatticeVector& s) {
  return kernel_witness(t, cox_monomials(t), r, s);
}

/// Re-derives every identity of the witness from exponent arithmetic and
/// expands sum f_i (y_i - z_i).
inline bool verify_kernel_witness(const TildeData& t, const CoxMonomials& m, const KernelWitness& w) {
  const std::size_t n = t.n, k = t.k;
  LatticeVector q2 = w.s;
  for (std::size_t i = 0; i < k; ++i) {
    if (w.a[i] != w.r[n + i] - w.s[n + i]) return false;
    Integer plus = w.a[i] > 0 ? w.a[i] : Integer(0);
    Integer minus = w.a[i] < 0 ? Integer(-w.a[i]) : Integer(0);
    if (w.q[n + i] != w.r[n + i] - plus) return false;
    q2[n + i] -= minus;
  }
  if (!(q2 == w.q)) return false;
  for (std::size_t j = 0; j < n; ++j)
    if (w.q[j] != w.r[j]) return false;
  Exponents cr = cox_exponents(t, w.r), cs = cox_exponents(t, w.s), cq = cox_exponents(t, w.q);
  if (!detail::nonnegative(cq) || !detail::nonnegative(w.p_r) || !detail::nonnegative(w.p_s)) return false;
  Exponents yr = w.p_r, zr = w.p_r, ys = w.p_s, zs = w.p_s;
  for (std::size_t i = 0; i < k; ++i) {
    Integer plus = w.a[i] > 0 ? w.a[i] : Integer(0);
    Integer minus = w.a[i] < 0 ? Integer(-w.a[i]) : Integer(0);
    yr = detail::add(yr, m.y[i], plus);
    zr = detail::add(zr, m.z[i], plus);
    ys = detail::add(ys, m.y[i], minus);
    zs = detail::add(zs, m.z[i], minus);
  }
  if (yr != cr || zr != cq || ys != cs || zs != cq) return false;

  detail::SparsePoly lhs;
  detail::accumulate(lhs, cr, 1);
  detail::accumulate(lhs, cs, -1);
  detail::SparsePoly rhs;
  for (std::size_t i = 0; i < k; ++i)
    for (const auto& [e, c] : w.cofactors[i]) {
      detail::accumulate(rhs, detail::add(e, m.y[i]), c);
      detail::accumulate(rhs, detail::add(e, m.z[i]), -c);
    }
  return lhs == rhs;
}

struct OracleFailure {
  LatticeVector r, s;
  std::string reason;
};

struct OracleReport {
  std::string check;
  /// Characters enumerated, and pairs (degree zero) or points (boundary) examined.
  std::size_t points = 0;
  std::size_t checked = 0;
  std::vector<OracleFailure> failures;

  bool ok() const { return failures.empty(); }
};

/// Characters of sigma~^vee whose Cox monomial has total degree <= bound.
inline std::vector<LatticeVector> tilde_characters(const TildeData& t, const Integer& bound) {
  Cone dual = dual_cone(t.sigma_tilde);
  LatticeVector deg(t.n + t.k);
  for (const auto& r : t.rays) deg = deg + r;
  return detail::points_below(dual, deg, bound);
}

/// For every pair r != s of bounded characters with equal N-projection,
/// Cox(chi^r) - Cox(chi^s) is shown to lie in the binomial ideal.
inline OracleReport degree_zero_equality_check(const TildeData& t, const Integer& bound = 12) {
  OracleReport rep{"degree-zero", 0, 0, {}};
  CoxMonomials m = cox_monomials(t);
  auto chars = tilde_characters(t, bound);
  rep.points = chars.size();
  std::map<LatticeVector, std::vector<LatticeVector>> fibres;
  for (const auto& c : chars) fibres[slice(c, 0, t.n)].push_back(c);
  for (const auto& [u, fib] : fibres)
    for (std::size_t a = 0; a < fib.size(); ++a)
      for (std::size_t b = a + 1; b < fib.size(); ++b) {
        ++rep.checked;
        auto w = kernel_witness(t, m, fib[a], fib[b]);
        if (!w) rep.failures.push_back({fib[a], fib[b], "factorization recipe failed"});
        else if (!verify_kernel_witness(t, m, *w)) rep.failures.push_back({fib[a], fib[b], "witness does not verify"});
      }
  return rep;
}

/// sigma = sigma~ cap N, as a cone in N.
inline Cone sigma_of(const TildeData& t) {
  const std::size_t rank = t.n + t.k;
  std::vector<LatticeVector> span;
  for (std::size_t i = 0; i < t.n; ++i) span.push_back(unit_vector(rank, i));
  Cone cut = intersect(t.sigma_tilde, cone_from_generators(rank, {}, span));
  std::vector<LatticeVector> rays;
  for (const auto& r : cut.rays) rays.push_back(slice(r, 0, t.n));
  return cone_from_generators(t.n, rays);
}

enum class BoundaryCertificateKind { DividesZ, ViaBinomial, ViaFibre, NotInIdeal };

/// Why Cox(chi^u~) is, or is not, in (y_i - z_0) + (z).
struct BoundaryCertificate {
  BoundaryCertificateKind kind = BoundaryCertificateKind::NotInIdeal;
  /// ViaBinomial: Cox(chi^u~) = p * y_i with z | p * z_0.
  std::size_t index = 0;
  Exponents p;
  /// ViaFibre: a character with the same N-projection whose monomial z divides.
  std::optional<KernelWitness> witness;
};

/// Characters of sigma~^vee over u (all of them; the fibre is a polytope).
inline std::vector<LatticeVector> fibre_over(const TildeData& t, const LatticeVector& u) {
  std::vector<AffineConstraint> ineqs;
  for (const auto& r : t.rays)
    ineqs.push_back(AffineConstraint{slice(r, t.n, t.k), Rational(dot(u, slice(r, 0, t.n)))});
  std::vector<LatticeVector> out;
  for (const auto& a : lattice_points(polyhedron_from_inequalities(t.k, ineqs))) out.push_back(concat(u, a));
  return out;
}

inline BoundaryCertificate boundary_certificate(const TildeData& t, const CoxMonomials& m, const LatticeVector& ut) {
  BoundaryCertificate c;
  Exponents e = cox_exponents(t, ut);
  if (detail::divides(m.z_boundary, e)) {
    c.kind = BoundaryCertificateKind::DividesZ;
    return c;
  }
  for (std::size_t i = 0; i < t.k; ++i) {
    if (!detail::divides(m.y[i], e)) continue;
    Exponents p = detail::add(e, m.y[i], -1);
    if (detail::divides(m.z_boundary, detail::add(p, m.z0))) {
      c.kind = BoundaryCertificateKind::ViaBinomial;
      c.index = i;
      c.p = p;
      return c;
    }
  }
  for (const auto& other : fibre_over(t, slice(ut, 0, t.n))) {
    if (!detail::divides(m.z_boundary, cox_exponents(t, other))) continue;
    c.kind = BoundaryCertificateKind::ViaFibre;
    c.witness = kernel_witness(t, m, ut, other);
    return c;
  }
  return c;
}

/// For every bounded character u~: its projection is interior to sigma^vee
/// iff Cox(chi^u~) lies in (y_i - z_0) + (z).
inline OracleReport boundary_equality_check(const TildeData& t, const Integer& bound = 12) {
  OracleReport rep{"boundary", 0, 0, {}};
  CoxMonomials m = cox_monomials(t);
  Cone sigma = sigma_of(t);
  auto chars = tilde_characters(t, bound);
  rep.points = chars.size();
  for (const auto& ut : chars) {
    ++rep.checked;
    LatticeVector u = slice(ut, 0, t.n);
    bool interior = true;
    for (const auto& r : sigma.rays)
      if (dot(u, r) <= 0) interior = false;
    BoundaryCertificate c = boundary_certificate(t, m, ut);
    bool in_ideal = c.kind != BoundaryCertificateKind::NotInIdeal;
    if (interior != in_ideal) {
      rep.failures.push_back({ut, ut, interior ? "interior but not in the ideal" : "in the ideal but not interior"});
    } else if (interior && c.kind == BoundaryCertificateKind::ViaFibre) {
      rep.failures.push_back({ut, ut, "interior but z and y_i do not divide"});
    } else if (c.kind == BoundaryCertificateKind::ViaFibre && (!c.witness || !verify_kernel_witness(t, m, *c.witness))) {
      rep.failures.push_back({ut, ut, "fibre witness does not verify"});
    }
  }
  return rep;
}

}  // namespace toricdef
