// One PASS/FAIL line per acceptance criterion; exit status 1 if any fail.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "support/corpus.hpp"
#include "support/mutations.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"
#include "toricdef/toricdef.hpp"

using namespace toricdef;
using LV = LatticeVector;
using Rays = std::vector<LatticeVector>;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.precision(3);
  o << std::fixed << s << " s";
  return o.str();
}

Rays sorted(Rays v) {
  std::sort(v.begin(), v.end());
  return v;
}

Rational pairing(const LV& u, const RationalVector& v) {
  Rational s = 0;
  for (std::size_t i = 0; i < u.rank(); ++i) s += Rational(u[i]) * v[i];
  return s;
}

Rational min_over(const LV& u, const std::vector<RationalVector>& vs) {
  Rational m = pairing(u, vs.front());
  for (const auto& v : vs) m = std::min(m, pairing(u, v));
  return m;
}

const std::vector<DeformationDatum>& corpus() {
  static const std::vector<DeformationDatum> data = testgen::random_valid_data(2024, 60);
  return data;
}

// cA1 with p = 3.
Outcome ac1() {
  Outcome o;
  auto t0 = Clock::now();
  DeformationDatum d = catalog::cA1(3);
  o.check(validate_datum(d).boundary_valid(), "datum invalid");
  TildeData t = build_tilde(d);
  o.check(t.rays.size() == 4, "sigma~ has " + std::to_string(t.rays.size()) + " rays");
  Integer det = abs(determinant(IntMatrix::from_rows(t.rays, t.n + t.k)));
  o.check(det == 1, "|det| = " + det.get_str());
  CoxSystem s = cox_system(t, catalog::cA1_aliases());
  auto e = [&](std::vector<std::pair<std::string, long>> p) { return detail::named_exponents(s, p); };
  CoxPolynomial tri = trinomials(t).at(0);
  CoxPolynomial want{{Term{{1, ""}, e({{"x", 1}, {"y", 1}})}, Term{{-1, ""}, e({{"u", 2}})},
                      Term{{-1, "t1"}, e({{"z", 3}})}}};
  o.check(same_terms(tri, want), "trinomial " + format_polynomial(s, tri));
  CoxPolynomial mono = boundary_monomial(t).monomial;
  o.check(mono.terms.size() == 1 && mono.terms[0].exps == e({{"z", 1}, {"u", 1}}), "monomial " + format_polynomial(s, mono));
  double dt = seconds_since(t0);
  o.check(dt < 1.0, "runtime " + fmt_seconds(dt));
  o.detail = format_polynomial(s, tri) + ", " + format_polynomial(s, mono) + ", " + fmt_seconds(dt);
  return o;
}

// P^2 to P(1,1,4).
Outcome ac2() {
  Outcome o;
  auto t0 = Clock::now();
  FanoPolytope P = validate_fano(catalog::p2_triangle());
  MutationDatum d = validate_mutation_datum(P, catalog::p2_mutation_w(), catalog::p2_mutation_factor());
  o.check(mutate(P, d).P == catalog::p114_triangle(), "mutation differs from conv{(-1,-1),(0,1),(4,3)}");
  MutationFamily fam = mutation_family(P, d, catalog::p2_family_aliases());
  o.check(sorted(fam.cox.rays) == sorted({LV{0, 1, 0}, LV{-1, -1, -1}, LV{0, 0, 1}, LV{2, 1, 1}}), "family rays");
  std::vector<Integer> w = fam.weights;
  std::sort(w.begin(), w.end());
  o.check(w == std::vector<Integer>{1, 1, 1, 2}, "weights");
  auto y = fam.cox.index_of(LV{-1, -1, -1});
  o.check(y && fam.weights[*y] == 2, "x_(-1,-1,-1) does not have weight 2");
  auto e = [&](std::vector<std::pair<std::string, long>> p) { return detail::named_exponents(fam.cox, p); };
  CoxPolynomial tri{{Term{{1, "a"}, e({{"x", 2}})}, Term{{1, "b"}, e({{"y", 1}})}, Term{{1, "c"}, e({{"z0", 1}, {"z1", 1}})}}};
  o.check(same_terms(fam.trinomial, tri), "trinomial " + format_polynomial(fam.cox, fam.trinomial));
  o.check(fam.monomial.terms.size() == 1 && fam.monomial.terms[0].exps == e({{"x", 1}, {"y", 1}}),
          "monomial " + format_polynomial(fam.cox, fam.monomial));
  // the [0:1:-1] fibre against the binomial of the induced datum, remapped by ray
  FiberReport f = specialize_fiber(fam, 0, 1, -1);
  o.check(f.matches_toric, "fibre at [0:1:-1] differs from the induced binomial");
  const ProjectiveTilde& ind = fam.induced;
  CoxPolynomial b = ind.binomials.at(0);
  CoxPolynomial remapped;
  for (const auto& term : b.terms) {
    Term r{term.coeff, std::vector<Integer>(fam.cox.size())};
    for (std::size_t j = 0; j < term.exps.size(); ++j) r.exps[*fam.cox.index_of(ind.ambient.fan.rays[j])] = term.exps[j];
    remapped.terms.push_back(r);
  }
  CoxPolynomial neg = remapped;
  for (auto& term : neg.terms) term.coeff.scalar = -term.coeff.scalar;
  o.check(same_terms(f.trinomial, remapped) || same_terms(f.trinomial, neg),
          "fibre " + format_polynomial(fam.cox, f.trinomial) + " vs binomial " + format_polynomial(fam.cox, remapped));
  double dt = seconds_since(t0);
  o.check(dt < 1.0, "runtime " + fmt_seconds(dt));
  o.detail = format_polynomial(fam.cox, fam.trinomial) + ", " + format_polynomial(fam.cox, fam.monomial) + ", " + fmt_seconds(dt);
  return o;
}

Outcome ac3() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& d : corpus()) {
    o.check(d.n() <= 3 && d.k() <= 2 && testgen::within_bounds(d, 5), "corpus datum out of range");
    TildeData t = build_tilde(d);
    StructureReport sr = check_tilde_structure(t, d);
    o.check(sr.passed(), "structure: " + sr.failure);
    o.check(fischer_shapiro_check(t.pairing_matrix()), "Fischer-Shapiro failed");
    ++n;
  }
  o.check(n >= 50, "corpus has only " + std::to_string(n) + " data");
  o.detail = std::to_string(n) + " data";
  return o;
}

// Both sides from the library, plus an independent evaluation over the
// vertices of each summand and of Q.
Outcome ac4() {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& d : corpus()) {
    Polyhedron Q = d.Q();
    for (const auto& u : testgen::dual_lattice_points(d.sigma, 5)) {
      FloorMinSides s = floor_min_sides(d, Q, u);
      Integer sum = 0;
      for (const auto& q : d.summands) sum += floor_of(min_over(u, q.vertices));
      Integer whole = floor_of(min_over(u, Q.vertices));
      o.check(s.sum_of_floors == s.floor_of_sum && s.sum_of_floors == sum && s.floor_of_sum == whole,
              "u = " + u.str());
      ++checked;
    }
  }
  o.detail = std::to_string(checked) + " characters";
  return o;
}

Outcome ac5() {
  Outcome o;
  auto t0 = Clock::now();
  std::vector<std::pair<std::string, TildeData>> cases;
  for (long p : {1L, 2L, 3L}) cases.emplace_back("cA1 p=" + std::to_string(p), build_tilde(catalog::cA1(p)));
  cases.emplace_back("toy plane", build_tilde(catalog::toy_plane()));
  {
    FanoPolytope P = validate_fano(catalog::p2_triangle());
    MutationDatum d = validate_mutation_datum(P, catalog::p2_mutation_w(), catalog::p2_mutation_factor());
    cases.emplace_back("induced", mutation_family(P, d).induced.tilde);
  }
  std::size_t min_checked = SIZE_MAX;
  for (const auto& [name, t] : cases) {
    for (const OracleReport& r : {degree_zero_equality_check(t), boundary_equality_check(t)}) {
      o.check(r.ok(), name + " " + r.check + ": " + std::to_string(r.failures.size()) + " failures");
      o.check(r.checked >= 200, name + " " + r.check + ": only " + std::to_string(r.checked) + " pairs");
      min_checked = std::min(min_checked, r.checked);
    }
  }
  double dt = seconds_since(t0);
  o.check(dt < 30.0, "runtime " + fmt_seconds(dt));
  o.detail = std::to_string(cases.size()) + " data, at least " + std::to_string(min_checked) + " pairs per check, " + fmt_seconds(dt);
  return o;
}

Outcome ac6() {
  Outcome o;
  const int cases = 1000;
  std::mt19937_64 rng(6060);
  int dual = 0, hull = 0, comm = 0, assoc = 0, lattice = 0;
  for (int i = 0; i < cases; ++i) {
    std::size_t d = 1 + rng() % 4;
    Cone c = cone_from_generators(d, testgen::random_vectors(rng, d, 1 + rng() % 6, 5));
    Cone cd = dual_cone(c);
    Cone back = dual_cone(cone_from_generators(d, cd.rays, cd.lineality));
    o.check(back == c, "dual-dual " + std::to_string(i));
    // every dual ray is nonnegative on every generator
    bool nonneg = true;
    for (const auto& r : cd.rays)
      for (const auto& g : c.rays) nonneg &= dot(r, g) >= 0;
    o.check(nonneg, "dual ray negative " + std::to_string(i));
    dual += back == c && nonneg;
  }
  for (int i = 0; i < cases; ++i) {
    std::size_t d = 2 + rng() % 2;
    auto pa = testgen::random_points(rng, d, 1 + rng() % 4, 3, 2);
    auto pb = testgen::random_points(rng, d, 1 + rng() % 4, 3, 1);
    auto pc = testgen::random_points(rng, d, 1 + rng() % 3, 2, 1);
    Polyhedron a = convex_hull(d, pa), b = convex_hull(d, pb), c = convex_hull(d, pc);
    bool h = convex_hull(d, a.vertices) == a;
    for (const auto& v : a.vertices) h &= oracle::in_hull(pa, {}, v);
    o.check(h, "hull " + std::to_string(i));
    hull += h;

    Polyhedron ab = minkowski_sum(a, b);
    std::vector<RationalVector> sums;
    for (const auto& x : pa)
      for (const auto& y : pb) sums.push_back(x + y);
    bool cm = ab == minkowski_sum(b, a) && ab == convex_hull(d, sums);
    o.check(cm, "commutativity " + std::to_string(i));
    comm += cm;
    bool as = minkowski_sum(ab, c) == minkowski_sum(a, minkowski_sum(b, c));
    o.check(as, "associativity " + std::to_string(i));
    assoc += as;
    bool lp = lattice_points(a) == oracle::lattice_points_naive(pa);
    o.check(lp, "lattice points " + std::to_string(i));
    lattice += lp;
  }
  o.detail = "dual " + std::to_string(dual) + ", hull " + std::to_string(hull) + ", commutativity " + std::to_string(comm) +
             ", associativity " + std::to_string(assoc) + ", lattice points " + std::to_string(lattice) + " of " +
             std::to_string(cases);
  return o;
}

Outcome ac7() {
  Outcome o;
  FanoPolytope P = validate_fano(catalog::p2_triangle());
  MutationDatum d = validate_mutation_datum(P, catalog::p2_mutation_w(), catalog::p2_mutation_factor());
  FanoPolytope Pp = mutate(P, d);
  MutationDatum inv = validate_mutation_datum(Pp, -d.w, d.F);
  o.check(mutate(Pp, inv).P == P.P, "P(1,1,4) does not mutate back to P^2");
  FanoPolytope P114 = validate_fano(catalog::p114_triangle());
  MutationDatum back = validate_mutation_datum(P114, -catalog::p2_mutation_w(), catalog::p2_mutation_factor());
  o.check(mutate(P114, back).P == catalog::p2_triangle(), "P(1,1,4) with -w does not give P^2");

  auto cases = testgen::random_mutations(4242, 10);
  o.check(cases.size() == 10, "only " + std::to_string(cases.size()) + " random mutations");
  std::size_t i = 0;
  for (const auto& c : cases) {
    std::string tag = "random " + std::to_string(i++);
    std::vector<Polyhedron> gmax, gmin;
    for (const auto& hw : c.d.witnesses) {
      gmax.push_back(hw.G);
      gmin.push_back(hw.G_min);
    }
    FanoPolytope m = mutate(c.P, c.d);
    o.check(mutate_with(c.P, c.d, gmax) == mutate_with(c.P, c.d, gmin) && mutate_with(c.P, c.d, gmax) == m.P,
            tag + ": witness dependence");
    MutationDatum ci = validate_mutation_datum(m, -c.d.w, c.d.F);
    o.check(mutate(m, ci).P == c.P.P, tag + ": inverse");
    MutationFamily fam = mutation_family(c.P, c.d);
    o.check(fam.inverse_recovers_P, tag + ": family inverse");
    o.check(disjoint_support_regular_sequence({fam.trinomial}, fam.monomial), tag + ": trinomial and monomial share a variable");
  }
  MutationFamily ex = mutation_family(P, d);
  o.check(disjoint_support_regular_sequence({ex.trinomial}, ex.monomial), "P^2 family coprimality");
  o.detail = "P^2 and P(1,1,4) both ways, " + std::to_string(cases.size()) + " random mutations";
  return o;
}

Outcome ac8() {
  Outcome o;
  HilbertBasis hb = hilbert_basis(dual_cone(catalog::cA1(3).sigma));
  Rays want{LV{-1, 1, 0}, LV{0, 0, 1}, LV{0, 1, 0}, LV{1, 1, 0}};
  o.check(sorted(hb.generators) == want, "generators differ");
  o.check(!hb.may_be_truncated, "degree bound not certified");
  Cone dual = dual_cone(catalog::cA1(3).sigma);
  Rays sat = hilbert_basis_by_saturation(dual, facet_sum_functional(dual), 12);
  o.check(sorted(sat) == want, "saturation closure differs");
  std::string g;
  for (const auto& v : hb.generators) g += (g.empty() ? "" : " ") + v.str();
  o.detail = g;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5}, {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}};
  int failed = 0;
  for (const auto& [id, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    std::cout << id << " " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << "\n";
    for (const auto& f : o.failures) std::cout << "    " << f << "\n";
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
