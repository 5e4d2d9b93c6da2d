#pragma once

// JSON encodings. Integers are JSON numbers when they fit in 64 bits and
// decimal strings otherwise; rationals are [num, den] pairs. Parsers raise
// SchemaError for anything that does not match the schema.

#include <algorithm>
#include <array>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "toricdef/mutation.hpp"
#include "toricdef/oracle.hpp"

namespace toricdef::json_io {

using Json = nlohmann::ordered_json;

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
  throw SchemaError(where + ": " + what);
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

inline const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

/// Library errors raised while building objects from well-typed JSON still
/// mean the input was malformed (rank mismatches and the like).
template <class F>
auto guarded(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

}  // namespace detail

namespace detail {

inline bool is_flat(const Json& j) {
  if (!j.is_array()) return j.is_primitive();
  return std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive() || (x.is_array() && std::all_of(x.begin(), x.end(), [](const Json& y) { return y.is_primitive(); })); });
}

inline void dump(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (is_flat(j)) {
    out += j.dump();
  } else if (j.is_array()) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      dump(j[i], out, indent + 2);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(static_cast<std::size_t>(indent), ' ') + "]";
  } else if (j.empty()) {
    out += "{}";
  } else {
    out += "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out += pad + Json(it.key()).dump() + ": ";
      dump(it.value(), out, indent + 2);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(static_cast<std::size_t>(indent), ' ') + "}";
  }
}

}  // namespace detail

/// Indented output with short numeric arrays kept on one line.
inline std::string dump(const Json& j) {
  std::string out;
  detail::dump(j, out, 0);
  return out;
}

inline Json to_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

inline Integer integer_from(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<unsigned long>()) : Integer(j.get<long>());
  if (j.is_string()) {
    static const std::regex digits("-?[0-9]+");
    const std::string s = j.get<std::string>();
    if (!std::regex_match(s, digits)) detail::fail(where, "not an integer: \"" + s + "\"");
    return Integer(s);
  }
  detail::fail(where, "expected an integer");
}

/// Integral values are written as bare integers.
inline Json to_json(const Rational& q) {
  if (q.get_den() == 1) return to_json(q.get_num());
  return Json::array({to_json(q.get_num()), to_json(q.get_den())});
}

/// [num, den] with den != 0, or a bare integer.
inline Rational rational_from(const Json& j, const std::string& where) {
  if (!j.is_array()) return Rational(integer_from(j, where));
  if (j.size() != 2) detail::fail(where, "expected [num, den]");
  Integer den = integer_from(j[1], where);
  if (den == 0) detail::fail(where, "zero denominator");
  return make_rational(integer_from(j[0], where), den);
}

inline Json to_json(const LatticeVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline Json to_json(const RationalVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline LatticeVector lattice_vector_from(const Json& j, const std::string& where, std::optional<std::size_t> rank = {}) {
  detail::array(j, where);
  std::vector<Integer> c;
  for (const auto& x : j) c.push_back(integer_from(x, where));
  if (rank && c.size() != *rank)
    detail::fail(where, "expected " + std::to_string(*rank) + " coordinates, got " + std::to_string(c.size()));
  return LatticeVector(std::move(c));
}

inline RationalVector rational_vector_from(const Json& j, const std::string& where, std::optional<std::size_t> rank = {}) {
  detail::array(j, where);
  std::vector<Rational> c;
  for (const auto& x : j) c.push_back(rational_from(x, where));
  if (rank && c.size() != *rank)
    detail::fail(where, "expected " + std::to_string(*rank) + " coordinates, got " + std::to_string(c.size()));
  return RationalVector(std::move(c));
}

inline std::vector<LatticeVector> lattice_vectors_from(const Json& j, const std::string& where, std::size_t rank) {
  std::vector<LatticeVector> out;
  for (const auto& x : detail::array(j, where)) out.push_back(lattice_vector_from(x, where, rank));
  return out;
}

inline Json to_json(const std::vector<LatticeVector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

inline std::size_t rank_from(const Json& j, const std::string& where) {
  const Json& r = detail::field(j, "rank", where);
  if (!r.is_number_unsigned()) detail::fail(where, "rank must be a non-negative integer");
  return r.get<std::size_t>();
}

// --- cones and polyhedra ----------------------------------------------------

inline Json to_json(const Cone& c) {
  Json j{{"rank", c.rank}, {"rays", to_json(c.rays)}};
  if (!c.lineality.empty()) j["lineality"] = to_json(c.lineality);
  return j;
}

inline Cone cone_from(const Json& j, const std::string& where = "cone") {
  std::size_t rank = rank_from(j, where);
  auto rays = lattice_vectors_from(detail::field(j, "rays", where), where + ".rays", rank);
  std::vector<LatticeVector> lin;
  if (j.contains("lineality")) lin = lattice_vectors_from(j["lineality"], where + ".lineality", rank);
  return detail::guarded(where, [&] { return cone_from_generators(rank, rays, lin); });
}

inline Json to_json(const Polyhedron& p) {
  Json verts = Json::array();
  for (const auto& v : p.vertices) verts.push_back(to_json(v));
  Json j{{"rank", p.rank}, {"vertices", verts}, {"rays", to_json(p.rays)}};
  if (!p.lineality.empty()) j["lineality"] = to_json(p.lineality);
  return j;
}

inline Polyhedron polyhedron_from(const Json& j, const std::string& where = "polyhedron") {
  std::size_t rank = rank_from(j, where);
  std::vector<RationalVector> verts;
  for (const auto& v : detail::array(detail::field(j, "vertices", where), where + ".vertices"))
    verts.push_back(rational_vector_from(v, where + ".vertices", rank));
  std::vector<LatticeVector> rays, lin;
  if (j.contains("rays")) rays = lattice_vectors_from(j["rays"], where + ".rays", rank);
  if (j.contains("lineality")) lin = lattice_vectors_from(j["lineality"], where + ".lineality", rank);
  return detail::guarded(where, [&] { return convex_hull(rank, verts, rays, lin); });
}

// --- deformation data ---------------------------------------------------------

inline Json to_json(const DeformationDatum& d) {
  Json summands = Json::array();
  for (const auto& q : d.summands) summands.push_back(to_json(q));
  Json j{{"sigma", to_json(d.sigma)}, {"summands", summands}, {"w", to_json(d.w)}, {"boundary", d.boundary}};
  if (d.claimed_Q) j["Q"] = to_json(*d.claimed_Q);
  return j;
}

inline DeformationDatum datum_from(const Json& j, const std::string& where = "datum") {
  DeformationDatum d;
  d.sigma = cone_from(detail::field(j, "sigma", where), where + ".sigma");
  const Json& summands = detail::array(detail::field(j, "summands", where), where + ".summands");
  if (summands.empty()) detail::fail(where, "at least Q_0 is required");
  for (std::size_t i = 0; i < summands.size(); ++i) {
    Polyhedron q = polyhedron_from(summands[i], where + ".summands[" + std::to_string(i) + "]");
    if (q.rank != d.sigma.rank) detail::fail(where, "summand rank differs from sigma");
    d.summands.push_back(std::move(q));
  }
  d.w = lattice_vector_from(detail::field(j, "w", where), where + ".w", d.sigma.rank);
  if (j.contains("boundary")) {
    if (!j["boundary"].is_boolean()) detail::fail(where, "boundary must be a boolean");
    d.boundary = j["boundary"].get<bool>();
  }
  if (j.contains("Q")) d.claimed_Q = polyhedron_from(j["Q"], where + ".Q");
  return d;
}

// --- polynomials and aliases ----------------------------------------------------

inline Coefficient coefficient_from(const Json& j, const std::string& where) {
  if (!j.is_string()) detail::fail(where, "coeff must be a string");
  static const std::regex form("([+-])([0-9]+)?(?:\\*?([A-Za-z_][A-Za-z0-9_]*))?");
  std::smatch m;
  const std::string s = j.get<std::string>();
  if (!std::regex_match(s, m, form) || (!m[2].matched && !m[3].matched)) detail::fail(where, "bad coefficient \"" + s + "\"");
  Coefficient c;
  c.scalar = m[2].matched ? Integer(m[2].str()) : Integer(1);
  if (c.scalar == 0) detail::fail(where, "zero coefficient");
  if (m[1].str() == "-") c.scalar = -c.scalar;
  c.param = m[3].matched ? m[3].str() : "";
  return c;
}

inline Json to_json(const CoxPolynomial& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms) terms.push_back(Json{{"coeff", t.coeff.str()}, {"exps", to_json(LatticeVector(t.exps))}});
  return Json{{"terms", terms}};
}

inline CoxPolynomial polynomial_from(const Json& j, const std::string& where = "polynomial") {
  CoxPolynomial f;
  std::optional<std::size_t> width;
  for (const auto& t : detail::array(detail::field(j, "terms", where), where + ".terms")) {
    Term term;
    term.coeff = coefficient_from(detail::field(t, "coeff", where), where);
    LatticeVector e = lattice_vector_from(detail::field(t, "exps", where), where + ".exps", width);
    width = e.rank();
    for (const auto& x : e) {
      if (x < 0) detail::fail(where, "negative exponent");
      term.exps.push_back(x);
    }
    f.terms.push_back(std::move(term));
  }
  return f;
}

inline Json to_json(const AliasTable& a) {
  Json entries = Json::array();
  for (const auto& [ray, name] : a.entries) entries.push_back(Json{{"ray", to_json(ray)}, {"name", name}});
  return Json{{"aliases", entries}};
}

inline AliasTable alias_table_from(const Json& j, const std::string& where = "aliases") {
  AliasTable a;
  for (const auto& e : detail::array(detail::field(j, "aliases", where), where)) {
    const Json& name = detail::field(e, "name", where);
    if (!name.is_string() || name.get<std::string>().empty()) detail::fail(where, "name must be a nonempty string");
    a.entries.emplace_back(lattice_vector_from(detail::field(e, "ray", where), where + ".ray"), name.get<std::string>());
  }
  return a;
}

// --- mutation and polarised inputs ---------------------------------------------

struct MutationRequest {
  Polyhedron P;
  LatticeVector w;
  Polyhedron F;

  friend bool operator==(const MutationRequest&, const MutationRequest&) = default;
};

inline Json to_json(const MutationRequest& r) {
  return Json{{"P", to_json(r.P)}, {"w", to_json(r.w)}, {"F", to_json(r.F)}};
}

inline MutationRequest mutation_request_from(const Json& j, const std::string& where = "mutation") {
  MutationRequest r;
  r.P = polyhedron_from(detail::field(j, "P", where), where + ".P");
  r.w = lattice_vector_from(detail::field(j, "w", where), where + ".w", r.P.rank);
  r.F = polyhedron_from(detail::field(j, "F", where), where + ".F");
  if (r.F.rank != r.P.rank) detail::fail(where, "F and P have different ranks");
  return r;
}

/// {"tau": Cone} or {"polytope": Polyhedron}; optionally "summands", "w" and
/// "boundary" for a datum over tau.
struct PolarizedRequest {
  std::optional<Cone> tau;
  std::optional<Polyhedron> polytope;
  std::vector<Polyhedron> summands;
  std::optional<LatticeVector> w;
  bool boundary = false;
};

inline PolarizedRequest polarized_request_from(const Json& j, const std::string& where = "polarized") {
  PolarizedRequest r;
  if (!j.is_object()) detail::fail(where, "expected an object");
  if (j.contains("tau") == j.contains("polytope")) detail::fail(where, "exactly one of \"tau\" and \"polytope\" is required");
  if (j.contains("tau")) r.tau = cone_from(j["tau"], where + ".tau");
  else r.polytope = polyhedron_from(j["polytope"], where + ".polytope");
  if (j.contains("summands")) {
    std::size_t rank = r.tau ? r.tau->rank : r.polytope->rank + 1;
    for (const auto& q : detail::array(j["summands"], where + ".summands")) {
      r.summands.push_back(polyhedron_from(q, where + ".summands"));
      if (r.summands.back().rank != rank) detail::fail(where, "summand rank differs from tau");
    }
    r.w = lattice_vector_from(detail::field(j, "w", where), where + ".w", rank);
    if (j.contains("boundary")) {
      if (!j["boundary"].is_boolean()) detail::fail(where, "boundary must be a boolean");
      r.boundary = j["boundary"].get<bool>();
    }
  }
  return r;
}

/// "a:b:c" with each entry an integer or p/q.
inline std::array<Rational, 3> parameter_point_from(const std::string& s) {
  static const std::regex form("\\s*(-?[0-9]+(?:/[0-9]+)?)\\s*:\\s*(-?[0-9]+(?:/[0-9]+)?)\\s*:\\s*(-?[0-9]+(?:/[0-9]+)?)\\s*");
  std::smatch m;
  if (!std::regex_match(s, m, form)) throw SchemaError("point: expected a:b:c, got \"" + s + "\"");
  std::array<Rational, 3> out;
  for (int i = 0; i < 3; ++i) {
    std::string part = m[i + 1].str();
    auto slash = part.find('/');
    if (slash == std::string::npos) {
      out[i] = Rational(Integer(part));
    } else {
      Integer den(part.substr(slash + 1));
      if (den == 0) throw SchemaError("point: zero denominator");
      out[i] = make_rational(Integer(part.substr(0, slash)), den);
    }
  }
  return out;
}

// --- reports --------------------------------------------------------------------

inline Json to_json(const ValidationReport& r) {
  Json conds = Json::array();
  for (const auto& c : r.conditions) {
    Json e{{"id", c.id}, {"passed", c.passed}};
    if (!c.passed) e["witness"] = c.witness;
    conds.push_back(e);
  }
  return Json{{"valid", r.valid()}, {"boundary_valid", r.boundary_valid()}, {"conditions", conds}};
}

inline Json to_json(const KernelWitness& w) {
  Json a = Json::array();
  for (const auto& x : w.a) a.push_back(to_json(x));
  return Json{{"r", to_json(w.r)}, {"s", to_json(w.s)}, {"q", to_json(w.q)}, {"a", a},
              {"p_r", to_json(LatticeVector(w.p_r))}, {"p_s", to_json(LatticeVector(w.p_s))}};
}

inline Json to_json(const OracleReport& r) {
  Json fails = Json::array();
  for (const auto& f : r.failures)
    fails.push_back(Json{{"witness", Json{{"r", to_json(f.r)}, {"s", to_json(f.s)}}}, {"reason", f.reason}});
  return Json{{"check", r.check}, {"characters", r.points}, {"checked", r.checked}, {"failures", fails}};
}

}  // namespace toricdef::json_io
