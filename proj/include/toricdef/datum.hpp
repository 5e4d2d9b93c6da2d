#pragma once

// Deformation data (Q, Q_0, ..., Q_k, w) over a cone sigma: validation of
// the defining conditions and the enlarged cone sigma~ in N + Z^k.

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "toricdef/polyhedral.hpp"

namespace toricdef {

struct DeformationDatum {
  Cone sigma;
  /// Q_0, Q_1, ..., Q_k.
  std::vector<Polyhedron> summands;
  LatticeVector w;
  /// Whether the boundary (lattice Q_1..Q_k) condition is claimed.
  bool boundary = false;
  /// If supplied, cross-checked against the Minkowski sum of the summands.
  std::optional<Polyhedron> claimed_Q;

  std::size_t n() const { return sigma.rank; }
  std::size_t k() const { return summands.empty() ? 0 : summands.size() - 1; }

  Polyhedron Q() const { return minkowski_sum(summands); }
};

struct ConditionResult {
  std::string id;
  bool passed = true;
  std::string witness;
};

struct ValidationReport {
  std::vector<ConditionResult> conditions;

  const ConditionResult* find(const std::string& id) const {
    for (const auto& c : conditions)
      if (c.id == id) return &c;
    return nullptr;
  }
  bool passed(const std::string& id) const {
    const ConditionResult* c = find(id);
    return c && c->passed;
  }
  /// Everything except the boundary condition.
  bool valid() const {
    for (const auto& c : conditions)
      if (c.id != "iv" && !c.passed) return false;
    return true;
  }
  bool boundary_valid() const { return valid() && passed("iv"); }

  std::string first_failure() const {
    for (const auto& c : conditions)
      if (!c.passed) return "(" + c.id + ") failed: " + c.witness;
    return "";
  }
};

namespace detail {

/// Depth-first search for vertices v_i of summands with sum equal to target;
/// a branch is cut once the remainder leaves the sum of the remaining summands.
inline bool decompose_vertex(const std::vector<Polyhedron>& summands, const std::vector<Polyhedron>& suffix_sums,
                             std::size_t i, const RationalVector& remainder, std::vector<RationalVector>& chosen) {
  if (i == summands.size()) return remainder.is_zero();
  if (!suffix_sums[i].contains(remainder)) return false;
  for (const auto& v : summands[i].vertices) {
    chosen.push_back(v);
    if (decompose_vertex(summands, suffix_sums, i + 1, remainder - v, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace detail

/// Checks every defining condition and records a witness for each failure.
/// Condition ids: "sigma" (full-dimensional strongly convex, ranks agree),
/// "k" (at least one deformation summand), "i" .. "vi", "iv'" and "iv".
inline ValidationReport validate_datum(const DeformationDatum& d) {
  ValidationReport rep;
  auto add = [&](const std::string& id, bool ok, const std::string& witness) {
    rep.conditions.push_back(ConditionResult{id, ok, ok ? "" : witness});
  };

  const std::size_t n = d.n();
  {
    std::string why;
    if (!d.sigma.is_strongly_convex()) why = "sigma contains a line";
    else if (!d.sigma.is_full_dimensional()) why = "sigma has dimension " + std::to_string(d.sigma.dimension());
    else if (d.w.rank() != n) why = "w has rank " + std::to_string(d.w.rank());
    for (std::size_t i = 0; i < d.summands.size() && why.empty(); ++i) {
      if (d.summands[i].rank != n) why = "Q_" + std::to_string(i) + " has rank " + std::to_string(d.summands[i].rank);
      else if (d.summands[i].empty) why = "Q_" + std::to_string(i) + " is empty";
    }
    add("sigma", why.empty(), why);
    if (!why.empty()) return rep;
  }
  add("k", d.summands.size() >= 2, "need Q_0 and at least one further summand");
  if (d.summands.empty()) return rep;

  const Polyhedron Q = d.Q();

  {
    std::string bad;
    for (const auto& v : Q.vertices)
      if (!d.sigma.contains(v)) {
        bad = "vertex " + v.str() + " outside sigma";
        break;
      }
    for (const auto& r : Q.rays)
      if (bad.empty() && !d.sigma.contains(r)) bad = "recession ray " + r.str() + " outside sigma";
    if (bad.empty() && !Q.lineality.empty()) bad = "Q contains the line " + Q.lineality.front().str();
    add("i", bad.empty(), bad);
  }

  add("ii", !Q.contains(LatticeVector(n)), "0 ∈ Q");

  if (d.claimed_Q) add("iii", polyhedron_equal(*d.claimed_Q, Q), "supplied Q differs from Q_0 + ... + Q_k");
  else add("iii", true, "");

  {
    std::vector<Polyhedron> suffix(d.summands.size());
    suffix.back() = d.summands.back();
    for (std::size_t i = d.summands.size() - 1; i-- > 0;) suffix[i] = minkowski_sum(d.summands[i], suffix[i + 1]);
    std::string bad;
    for (const auto& v : Q.vertices) {
      std::vector<RationalVector> chosen;
      if (!detail::decompose_vertex(d.summands, suffix, 0, v, chosen)) {
        bad = "vertex " + v.str() + " is not a sum of summand vertices";
        break;
      }
      std::size_t fractional = 0;
      for (const auto& c : chosen) fractional += !is_integral(c);
      if (fractional > 1) {
        std::ostringstream os;
        os << "vertex " << v << " = ";
        for (std::size_t i = 0; i < chosen.size(); ++i) os << (i ? " + " : "") << chosen[i];
        os << " has " << fractional << " non-lattice parts";
        bad = os.str();
        break;
      }
    }
    add("iv'", bad.empty(), bad);
  }

  if (d.boundary) {
    std::string bad;
    for (std::size_t i = 1; i < d.summands.size() && bad.empty(); ++i)
      for (const auto& v : d.summands[i].vertices)
        if (!is_integral(v)) {
          bad = "Q_" + std::to_string(i) + " has non-lattice vertex " + v.str();
          break;
        }
    add("iv", bad.empty(), bad);
  }

  {
    std::string bad;
    try {
      MinResult m = min_functional(Q, d.w);
      if (m.min < -1) bad = "min_Q w = " + m.min.get_str() + " at " + m.argmin_vertex.str();
    } catch (const Error& e) {
      bad = e.what();
    }
    add("v", bad.empty(), bad);
  }

  {
    std::vector<AffineConstraint> ineqs;
    for (const auto& f : d.sigma.facets) ineqs.push_back(AffineConstraint{f, 0});
    Polyhedron slice = polyhedron_from_inequalities(n, ineqs, {AffineConstraint{d.w, 1}});
    std::string bad;
    for (const auto& v : slice.vertices)
      if (!membership_scaling(Q, primitive(v))) {
        bad = "vertex " + v.str() + " of sigma cap {w = -1} not in R+ Q";
        break;
      }
    add("vi", bad.empty(), bad);
  }
  return rep;
}

/// Where a generator of sigma~ came from.
struct TildeProvenance {
  enum class Kind { SigmaRay, Q0Vertex, QiVertex, RecessionRay } kind;
  std::size_t summand = 0;  // i for Q_i
  RationalVector source;    // the ray or vertex in N_R
  LatticeVector generator;  // primitive lifted generator in N~
};

inline const char* to_string(TildeProvenance::Kind k) {
  switch (k) {
    case TildeProvenance::Kind::SigmaRay: return "sigma";
    case TildeProvenance::Kind::Q0Vertex: return "Q0-e";
    case TildeProvenance::Kind::QiVertex: return "Qi+ei";
    case TildeProvenance::Kind::RecessionRay: return "rec";
  }
  return "?";
}

struct TildeData {
  std::size_t n = 0;
  std::size_t k = 0;
  Cone sigma_tilde;
  /// Extreme rays of sigma~, in the canonical order of sigma_tilde.rays.
  std::vector<LatticeVector> rays;
  /// pairings[j][i] = <e_{i+1}*, rays[j]>.
  std::vector<std::vector<Integer>> pairings;
  /// <w~, rays[j]>.
  std::vector<Integer> w_pairings;
  LatticeVector w;
  LatticeVector w_tilde;
  /// floor(min_{Q_i} w) for i = 1..k.
  std::vector<Integer> floor_mins;
  /// Every generator mapping to rays[j]; generators that are not extreme
  /// are kept in dropped_generators.
  std::vector<std::vector<TildeProvenance>> provenance;
  std::vector<TildeProvenance> dropped_generators;

  /// k x rays matrix of e_i*-pairings.
  IntMatrix pairing_matrix() const {
    IntMatrix m(k, rays.size());
    for (std::size_t j = 0; j < rays.size(); ++j)
      for (std::size_t i = 0; i < k; ++i) m(i, j) = pairings[j][i];
    return m;
  }
};

/// Fills rays-derived tables from a list of rays in N + Z^k.
inline void tabulate_pairings(TildeData& t) {
  t.pairings.clear();
  t.w_pairings.clear();
  for (const auto& r : t.rays) {
    std::vector<Integer> p;
    for (std::size_t i = 0; i < t.k; ++i) p.push_back(r[t.n + i]);
    t.pairings.push_back(std::move(p));
    t.w_pairings.push_back(dot(t.w_tilde, r));
  }
}

inline TildeData build_tilde(const DeformationDatum& d) {
  ValidationReport rep = validate_datum(d);
  if (!rep.valid()) throw Error(ErrorCode::InvalidDatum, rep.first_failure());

  const std::size_t n = d.n(), k = d.k();
  TildeData t;
  t.n = n;
  t.k = k;
  t.w = d.w;

  std::vector<TildeProvenance> gens;
  auto lift = [&](const RationalVector& v, const LatticeVector& tail) { return primitive(concat(v, to_rational(tail))); };
  LatticeVector zero_tail(k);
  for (const auto& r : d.sigma.rays)
    gens.push_back({TildeProvenance::Kind::SigmaRay, 0, to_rational(r), concat(r, zero_tail)});
  LatticeVector minus_ones(k);
  for (std::size_t i = 0; i < k; ++i) minus_ones[i] = -1;
  for (const auto& v : d.summands[0].vertices)
    gens.push_back({TildeProvenance::Kind::Q0Vertex, 0, v, lift(v, minus_ones)});
  for (std::size_t i = 1; i <= k; ++i)
    for (const auto& v : d.summands[i].vertices)
      gens.push_back({TildeProvenance::Kind::QiVertex, i, v, lift(v, unit_vector(k, i - 1))});
  for (std::size_t i = 0; i <= k; ++i)
    for (const auto& r : d.summands[i].rays)
      gens.push_back({TildeProvenance::Kind::RecessionRay, i, to_rational(r), concat(r, zero_tail)});

  std::vector<LatticeVector> g;
  for (const auto& p : gens) g.push_back(p.generator);
  t.sigma_tilde = cone_from_generators(n + k, g);
  t.rays = t.sigma_tilde.rays;
  t.provenance.resize(t.rays.size());
  for (const auto& p : gens) {
    auto it = std::lower_bound(t.rays.begin(), t.rays.end(), p.generator);
    if (it != t.rays.end() && *it == p.generator) t.provenance[static_cast<std::size_t>(it - t.rays.begin())].push_back(p);
    else t.dropped_generators.push_back(p);
  }

  t.w_tilde = concat(d.w, LatticeVector(k));
  for (std::size_t i = 1; i <= k; ++i) {
    Integer f = min_functional(d.summands[i], d.w).floor_min;
    t.floor_mins.push_back(f);
    t.w_tilde[n + i - 1] = -f;
  }
  tabulate_pairings(t);
  return t;
}

struct StructureReport {
  bool strongly_convex = false;
  bool dimension_ok = false;
  bool slice_ok = false;
  std::size_t dimension = 0;
  std::string failure;

  bool passed() const { return strongly_convex && dimension_ok && slice_ok; }
};

/// sigma~ strongly convex of dimension n + k with sigma~ cap N_R = sigma.
/// Recomputed from t.rays so that a tampered ray list is caught.
inline StructureReport check_tilde_structure(const TildeData& t, const DeformationDatum& d) {
  StructureReport rep;
  const std::size_t n = t.n, k = t.k;
  Cone c = cone_from_generators(n + k, t.rays);
  rep.strongly_convex = c.is_strongly_convex();
  rep.dimension = c.dimension();
  rep.dimension_ok = rep.dimension == n + k;

  std::vector<LatticeVector> eqs = c.equations;
  for (std::size_t i = 0; i < k; ++i) eqs.push_back(unit_vector(n + k, n + i));
  Cone cut = cone_from_inequalities(n + k, c.facets, eqs);
  std::vector<LatticeVector> proj, proj_lin;
  for (const auto& r : cut.rays) proj.push_back(slice(r, 0, n));
  for (const auto& l : cut.lineality) proj_lin.push_back(slice(l, 0, n));
  rep.slice_ok = cone_from_generators(n, proj, proj_lin) == d.sigma;

  if (!rep.strongly_convex) rep.failure = "sigma~ is not strongly convex";
  else if (!rep.dimension_ok) rep.failure = "sigma~ has dimension " + std::to_string(rep.dimension) + ", expected " + std::to_string(n + k);
  else if (!rep.slice_ok) rep.failure = "sigma~ cap N_R differs from sigma";
  return rep;
}

inline void require_tilde_structure(const TildeData& t, const DeformationDatum& d) {
  StructureReport rep = check_tilde_structure(t, d);
  if (!rep.passed()) throw Error(ErrorCode::StructureViolation, rep.failure);
}

struct FloorMinSides {
  Integer sum_of_floors;  // sum_i floor(min_{Q_i} u)
  Integer floor_of_sum;   // floor(min_Q u)
};

/// Q must be the Minkowski sum of d's summands; pass it to avoid recomputing.
inline FloorMinSides floor_min_sides(const DeformationDatum& d, const Polyhedron& Q, const LatticeVector& u) {
  for (const auto& r : d.sigma.rays)
    if (dot(u, r) < 0) throw Error(ErrorCode::NotInDualCone, u.str() + " is negative on ray " + r.str());
  FloorMinSides s{0, min_functional(Q, u).floor_min};
  for (const auto& q : d.summands) s.sum_of_floors += min_functional(q, u).floor_min;
  return s;
}

inline bool floor_min_identity(const DeformationDatum& d, const LatticeVector& u) {
  FloorMinSides s = floor_min_sides(d, d.Q(), u);
  return s.sum_of_floors == s.floor_of_sum;
}

}  // namespace toricdef
