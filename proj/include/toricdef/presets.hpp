#pragma once

// Named end-to-end examples with embedded golden values.

#include <string>
#include <vector>

#include "toricdef/catalog.hpp"
#include "toricdef/json_io.hpp"

namespace toricdef {

struct PresetReport {
  std::string name;
  /// Human-readable results, one per line.
  std::vector<std::string> lines;
  /// "expected ... got ..." for every golden value that did not match.
  std::vector<std::string> mismatches;
  json_io::Json json = json_io::Json::object();

  bool ok() const { return mismatches.empty(); }
};

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"cA1", "p2-p114", "hexagon", "toy-plane"};
  return names;
}

namespace detail {

class PresetRecorder {
 public:
  explicit PresetRecorder(PresetReport& r) : r_(r) {}

  void line(const std::string& s) { r_.lines.push_back(s); }

  void expect(bool ok, const std::string& what) {
    if (!ok) r_.mismatches.push_back(what);
  }

  void expect_eq(const std::string& got, const std::string& want, const std::string& what) {
    if (got != want) r_.mismatches.push_back(what + ": expected \"" + want + "\", got \"" + got + "\"");
  }

 private:
  PresetReport& r_;
};

inline std::vector<Integer> named_exponents(const CoxSystem& s, const std::vector<std::pair<std::string, long>>& powers) {
  std::vector<Integer> e(s.size());
  for (const auto& [name, p] : powers) {
    auto it = std::find(s.names.begin(), s.names.end(), name);
    if (it == s.names.end()) throw Error(ErrorCode::InvalidInput, "no variable named " + name);
    e[static_cast<std::size_t>(it - s.names.begin())] = p;
  }
  return e;
}

inline std::vector<LatticeVector> sorted_copy(std::vector<LatticeVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline std::string join(const std::vector<LatticeVector>& vs) {
  std::string s;
  for (const auto& v : vs) s += (s.empty() ? "" : ", ") + v.str();
  return s;
}

inline std::string join(const std::vector<std::string>& vs, const char* sep = ", ") {
  std::string s;
  for (const auto& v : vs) s += (s.empty() ? "" : sep) + v;
  return s;
}

inline void run_cA1(PresetReport& out, long p) {
  using json_io::to_json;
  PresetRecorder rec(out);
  DeformationDatum d = catalog::cA1(p);
  ValidationReport vr = validate_datum(d);
  rec.expect(vr.boundary_valid(), "datum invalid: " + vr.first_failure());
  TildeData t = build_tilde(d);
  Integer det = abs(determinant(IntMatrix::from_rows(t.rays, t.n + t.k)));
  rec.line("sigma~ rays: " + join(t.rays) + " (|det| = " + det.get_str() + ")");
  rec.expect(t.rays.size() == 4 && det == 1, "sigma~ should be a smooth cone with 4 rays");

  CoxSystem s = cox_system(t, catalog::cA1_aliases());
  CoxPolynomial tri = trinomials(t).at(0);
  CoxPolynomial want{{Term{{1, ""}, named_exponents(s, {{"x", 1}, {"y", 1}})},
                      Term{{-1, ""}, named_exponents(s, {{"u", 2}})},
                      Term{{-1, "t1"}, named_exponents(s, {{"z", p}})}}};
  std::string tri_s = format_polynomial(s, tri);
  std::string want_s = "x*y - u^2 - t1*z" + (p == 1 ? std::string() : "^" + std::to_string(p));
  rec.line("trinomial: " + tri_s);
  rec.expect_eq(tri_s, want_s, "trinomial");
  rec.expect(same_terms(tri, want), "trinomial exponent vectors differ from x*y, u^2, z^p");

  CoxPolynomial mono = boundary_monomial(t).monomial;
  std::string mono_s = format_polynomial(s, mono);
  rec.line("boundary monomial: " + mono_s);
  rec.expect_eq(mono_s, "z*u", "boundary monomial");
  rec.expect(mono.terms.front().exps == named_exponents(s, {{"z", 1}, {"u", 1}}), "boundary monomial exponents");

  HilbertBasis hb = hilbert_basis(dual_cone(d.sigma));
  rec.line("Hilbert basis of sigma^vee: " + join(hb.generators));
  std::vector<LatticeVector> gens{LatticeVector{-1, 1, 0}, LatticeVector{0, 0, 1}, LatticeVector{0, 1, 0},
                                  LatticeVector{1, 1, 0}};
  rec.expect(hb.generators == gens && !hb.may_be_truncated, "Hilbert basis of sigma^vee");

  out.json["p"] = p;
  out.json["rays"] = to_json(t.rays);
  out.json["trinomial"] = tri_s;
  out.json["trinomial_terms"] = to_json(tri);
  out.json["boundary_monomial"] = mono_s;
  out.json["hilbert_basis"] = to_json(hb.generators);
}

inline void run_p2_p114(PresetReport& out) {
  using json_io::to_json;
  PresetRecorder rec(out);
  FanoPolytope P = validate_fano(catalog::p2_triangle());
  MutationDatum d = validate_mutation_datum(P, catalog::p2_mutation_w(), catalog::p2_mutation_factor());
  MutationFamily fam = mutation_family(P, d, catalog::p2_family_aliases());
  std::vector<LatticeVector> pv;
  for (const auto& v : fam.P_prime.P.vertices) pv.push_back(to_lattice(v));
  rec.line("mutation: conv{" + join(pv) + "}");
  rec.expect(fam.P_prime.P == catalog::p114_triangle(), "mutation should be conv{(-1,-1), (0,1), (4,3)}");
  rec.expect(fam.inverse_recovers_P, "inverse mutation does not recover P");

  std::vector<LatticeVector> rays = sorted_copy(fam.cox.rays);
  rec.line("ambient rays: " + join(rays));
  rec.expect(rays == sorted_copy({LatticeVector{0, 1, 0}, LatticeVector{-1, -1, -1}, LatticeVector{0, 0, 1},
                                  LatticeVector{2, 1, 1}}),
             "ambient rays");
  std::vector<std::string> ws;
  for (std::size_t j : fam.cox.display_order) ws.push_back(fam.cox.names[j] + ":" + fam.weights[j].get_str());
  rec.line("weights: " + join(ws));
  std::vector<Integer> sw = fam.weights;
  std::sort(sw.begin(), sw.end());
  rec.expect(sw == std::vector<Integer>{1, 1, 1, 2}, "weights should be (1,1,1,2)");
  rec.expect(fam.weights.at(*fam.cox.index_of(LatticeVector{-1, -1, -1})) == 2, "x_(-1,-1,-1) should have weight 2");

  std::string tri = format_polynomial(fam.cox, fam.trinomial), mono = format_polynomial(fam.cox, fam.monomial);
  rec.line("trinomial: " + tri);
  rec.line("monomial: " + mono);
  rec.expect_eq(tri, "a*x^2 + b*y + c*z0*z1", "trinomial");
  rec.expect_eq(mono, "x*y", "monomial");

  FiberReport fp = specialize_fiber(fam, 0, 1, -1), fq = specialize_fiber(fam, 1, 0, -1);
  std::string fp_s = format_polynomial(fam.cox, fp.trinomial), fq_s = format_polynomial(fam.cox, fq.trinomial);
  rec.line("fiber [0:1:-1] (X_P): " + fp_s);
  rec.line("fiber [1:0:-1] (X_P'): " + fq_s);
  rec.expect_eq(fp_s, "y - z0*z1", "fiber at [0:1:-1]");
  rec.expect_eq(fq_s, "x^2 - z0*z1", "fiber at [1:0:-1]");
  rec.expect(fp.matches_toric, "fiber at [0:1:-1] differs from the binomial of the induced datum");
  rec.expect(fq.matches_toric, "fiber at [1:0:-1] differs from the binomial of the inverse datum");

  out.json["mutation"] = to_json(fam.P_prime.P);
  out.json["rays"] = to_json(rays);
  out.json["trinomial"] = tri;
  out.json["monomial"] = mono;
  out.json["fibers"] = json_io::Json{{"[0:1:-1]", fp_s}, {"[1:0:-1]", fq_s}};
}

inline void run_hexagon(PresetReport& out) {
  PresetRecorder rec(out);
  Polyhedron hexagon = catalog::lattice_polytope(2, catalog::hexagon_vertices());
  std::vector<std::vector<std::string>> tri_sets;
  std::vector<std::string> labels{"segments", "triangles"};
  std::vector<std::vector<Polyhedron>> decomps{catalog::hexagon_segments(), catalog::hexagon_triangles()};
  for (std::size_t i = 0; i < decomps.size(); ++i) {
    rec.expect(minkowski_sum(decomps[i]) == hexagon, labels[i] + " do not sum to the hexagon");
    DeformationDatum d = catalog::hexagon_datum(decomps[i]);
    ValidationReport vr = validate_datum(d);
    rec.expect(vr.boundary_valid(), labels[i] + " datum invalid: " + vr.first_failure());
    TildeData t = build_tilde(d);
    StructureReport sr = check_tilde_structure(t, d);
    rec.expect(sr.passed(), labels[i] + ": " + sr.failure);
    rec.expect(fischer_shapiro_check(t.pairing_matrix()), labels[i] + ": binomials not a regular sequence");
    CoxSystem s = cox_system(t);
    std::vector<std::string> tris;
    for (const auto& f : trinomials(t)) tris.push_back(format_polynomial(s, f));
    rec.line(labels[i] + " (k = " + std::to_string(t.k) + "): " + join(tris, "; "));
    out.json[labels[i]] = tris;
    tri_sets.push_back(tris);
  }
  rec.expect(tri_sets[0] != tri_sets[1], "the two decompositions give the same trinomials");
}

inline void run_toy_plane(PresetReport& out) {
  PresetRecorder rec(out);
  DeformationDatum d = catalog::toy_plane();
  rec.expect(validate_datum(d).boundary_valid(), "datum invalid");
  TildeData t = build_tilde(d);
  CoxSystem s = cox_system(t, catalog::toy_plane_aliases());
  std::string b = format_polynomial(s, binomials(t).at(0)), tri = format_polynomial(s, trinomials(t).at(0)),
              mono = format_polynomial(s, boundary_monomial(t).monomial);
  rec.line("binomial: " + b);
  rec.line("trinomial: " + tri);
  rec.line("boundary monomial: " + mono);
  rec.expect_eq(b, "y - z", "binomial");
  rec.expect_eq(tri, "y - z - t1", "trinomial");
  rec.expect_eq(mono, "x*z", "boundary monomial");
  out.json["binomial"] = b;
  out.json["trinomial"] = tri;
  out.json["boundary_monomial"] = mono;
}

}  // namespace detail

/// Runs the named example; unknown names raise InvalidInput. `p` is used by cA1 only.
inline PresetReport verify_example(const std::string& name, long p = 3) {
  PresetReport out;
  out.name = name;
  out.json["name"] = name;
  if (name == "cA1") {
    if (p < 1) throw Error(ErrorCode::InvalidInput, "p must be positive");
    detail::run_cA1(out, p);
  } else if (name == "p2-p114") {
    detail::run_p2_p114(out);
  } else if (name == "hexagon") {
    detail::run_hexagon(out);
  } else if (name == "toy-plane") {
    detail::run_toy_plane(out);
  } else {
    throw Error(ErrorCode::InvalidInput, "unknown example \"" + name + "\" (known: " + detail::join(preset_names()) + ")");
  }
  out.json["pass"] = out.ok();
  out.json["mismatches"] = out.mismatches;
  return out;
}

}  // namespace toricdef
