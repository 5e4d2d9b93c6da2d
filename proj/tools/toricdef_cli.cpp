// Command-line front end. Exit status: 0 success, 1 validation failure,
// 2 malformed input or usage.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "toricdef/toricdef.hpp"

using namespace toricdef;
using json_io::Json;
using json_io::SchemaError;
using json_io::to_json;

namespace {

struct Options {
  std::string command;
  std::string input;
  std::string format = "pretty";
  long bound = 12;
  bool bound_given = false;
  long p = 3;
  std::string alias_file;
  std::string point;
};

struct Output {
  Json json = Json::object();
  std::vector<std::string> lines;
  int status = 0;

  void line(const std::string& s) { lines.push_back(s); }
};

Json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

AliasTable aliases_of(const Options& o) {
  if (o.alias_file.empty()) return {};
  return json_io::alias_table_from(read_json(o.alias_file), o.alias_file);
}

std::string join(const std::vector<LatticeVector>& vs) {
  std::string s;
  for (const auto& v : vs) s += (s.empty() ? "" : " ") + v.str();
  return s;
}

std::string vertices_of(const Polyhedron& p) {
  std::string s;
  for (const auto& v : p.vertices) s += (s.empty() ? "" : " ") + v.str();
  return "conv{" + s + "}" + (p.rays.empty() ? "" : " + cone{" + join(p.rays) + "}");
}

Json polynomial_json(const CoxSystem& s, const CoxPolynomial& f) {
  return Json{{"text", format_polynomial(s, f)}, {"poly", to_json(f)}};
}

Json variables_json(const CoxSystem& s) {
  Json vars = Json::array();
  for (std::size_t j = 0; j < s.size(); ++j) vars.push_back(Json{{"name", s.names[j]}, {"ray", to_json(s.rays[j])}});
  return vars;
}

void report_validation(Output& out, const ValidationReport& rep, bool boundary) {
  out.json["validation"] = to_json(rep);
  for (const auto& c : rep.conditions)
    out.line(c.passed ? "(" + c.id + ") passed" : "(" + c.id + ") failed: " + c.witness);
  bool ok = boundary ? rep.boundary_valid() : rep.valid();
  out.line(ok ? (boundary ? "boundary datum: valid" : "datum: valid") : "datum: invalid");
  if (!ok) out.status = 1;
}

/// Validates and reports; true if the caller may go on.
bool checked_datum(Output& out, const DeformationDatum& d) {
  ValidationReport rep = validate_datum(d);
  if (d.boundary ? rep.boundary_valid() : rep.valid()) return true;
  report_validation(out, rep, d.boundary);
  return false;
}

Output cmd_validate(const Options& o) {
  Output out;
  DeformationDatum d = json_io::datum_from(read_json(o.input));
  report_validation(out, validate_datum(d), d.boundary);
  return out;
}

Output cmd_tilde(const Options& o) {
  Output out;
  DeformationDatum d = json_io::datum_from(read_json(o.input));
  if (!checked_datum(out, d)) return out;
  TildeData t = build_tilde(d);
  StructureReport sr = check_tilde_structure(t, d);
  Json rays = Json::array();
  for (std::size_t j = 0; j < t.rays.size(); ++j) {
    Json from = Json::array();
    for (const auto& p : t.provenance[j]) from.push_back(to_string(p.kind));
    rays.push_back(Json{{"ray", to_json(t.rays[j])}, {"from", from}});
    std::string kinds;
    for (const auto& p : t.provenance[j]) kinds += (kinds.empty() ? "" : ",") + std::string(to_string(p.kind));
    out.line("ray " + t.rays[j].str() + " [" + kinds + "]");
  }
  out.json["n"] = t.n;
  out.json["k"] = t.k;
  out.json["rays"] = rays;
  out.json["w_tilde"] = to_json(t.w_tilde);
  Json fm = Json::array();
  for (const auto& f : t.floor_mins) fm.push_back(to_json(f));
  out.json["floor_mins"] = fm;
  out.json["structure"] = Json{{"strongly_convex", sr.strongly_convex}, {"dimension", sr.dimension},
                               {"slice_ok", sr.slice_ok}, {"passed", sr.passed()}};
  out.line("w~ = " + t.w_tilde.str());
  out.line(sr.passed() ? "structure: passed (dimension " + std::to_string(sr.dimension) + ")"
                       : "structure: failed: " + sr.failure);
  if (!sr.passed()) out.status = 1;
  return out;
}

Output cmd_equations(const Options& o) {
  Output out;
  DeformationDatum d = json_io::datum_from(read_json(o.input));
  if (!checked_datum(out, d)) return out;
  TildeData t = build_tilde(d);
  CoxSystem s = cox_system(t, aliases_of(o));
  out.json["variables"] = variables_json(s);
  Json bs = Json::array(), ts = Json::array();
  for (const auto& b : binomials(t)) {
    bs.push_back(polynomial_json(s, b));
    out.line("binomial: " + format_polynomial(s, b));
  }
  for (const auto& f : trinomials(t)) {
    ts.push_back(polynomial_json(s, f));
    out.line("trinomial: " + format_polynomial(s, f));
  }
  out.json["binomials"] = bs;
  out.json["trinomials"] = ts;
  bool regular = fischer_shapiro_check(t.pairing_matrix());
  out.json["binomials_regular_sequence"] = regular;
  out.line(std::string("binomials form a regular sequence: ") + (regular ? "yes" : "not certified"));
  if (d.boundary) {
    BoundaryMonomial m = boundary_monomial(t);
    out.json["boundary_monomial"] = polynomial_json(s, m.monomial);
    out.line("boundary monomial: " + format_polynomial(s, m.monomial));
  }
  return out;
}

Output cmd_polarize(const Options& o) {
  Output out;
  json_io::PolarizedRequest r = json_io::polarized_request_from(read_json(o.input));
  PolarizedToricVariety v = r.tau ? polarized_from_tau(*r.tau) : cone_from_polytope(*r.polytope);
  Json rays = Json::array();
  for (std::size_t j = 0; j < v.fan.rays.size(); ++j) {
    rays.push_back(Json{{"ray", to_json(v.fan.rays[j])}, {"phi", to_json(v.phi_values[j])}, {"b", to_json(v.ray_data[j].b)}});
    out.line("ray " + v.fan.rays[j].str() + "  phi = " + v.phi_values[j].get_str() + "  b = " + v.ray_data[j].b.get_str());
  }
  out.json["tau"] = to_json(v.tau);
  out.json["fan_rays"] = rays;
  out.json["divisor"] = to_string(classify_divisor(v));
  out.json["polytope"] = to_json(polytope_in_M(v));
  out.line(std::string("divisor: ") + to_string(classify_divisor(v)));
  out.line("polytope in M: " + vertices_of(polytope_in_M(v)));
  if (r.w) {
    DeformationDatum d;
    d.sigma = v.tau;
    d.summands = r.summands;
    d.w = *r.w;
    d.boundary = r.boundary;
    if (!checked_datum(out, d)) return out;
    ProjectiveTilde pt = projective_tilde(v, d, aliases_of(o));
    Json proj{{"ambient_rays", to_json(pt.ambient.fan.rays)}, {"variables", variables_json(pt.cox)}};
    Json bs = Json::array(), ts = Json::array();
    for (const auto& b : pt.binomials) bs.push_back(polynomial_json(pt.cox, b));
    for (const auto& f : pt.trinomials) ts.push_back(polynomial_json(pt.cox, f));
    proj["binomials"] = bs;
    proj["trinomials"] = ts;
    out.line("ambient fan rays: " + join(pt.ambient.fan.rays));
    for (const auto& f : pt.trinomials) out.line("trinomial: " + format_polynomial(pt.cox, f));
    if (pt.monomial) {
      proj["boundary_monomial"] = polynomial_json(pt.cox, pt.monomial->monomial);
      out.line("boundary monomial: " + format_polynomial(pt.cox, pt.monomial->monomial));
    } else if (d.boundary) {
      proj["boundary_monomial_refused"] = pt.monomial_refusal;
      out.line("boundary monomial refused: " + pt.monomial_refusal);
      out.status = 1;
    }
    out.json["projective"] = proj;
  }
  return out;
}

struct MutationInput {
  FanoPolytope P;
  MutationDatum d;
};

MutationInput mutation_input(const Options& o) {
  json_io::MutationRequest r = json_io::mutation_request_from(read_json(o.input));
  FanoPolytope P = validate_fano(r.P);
  return {P, validate_mutation_datum(P, r.w, r.F)};
}

Output cmd_mutate(const Options& o) {
  Output out;
  MutationInput in = mutation_input(o);
  FanoPolytope Pp = mutate(in.P, in.d);
  Json hs = Json::array();
  for (const auto& hw : in.d.witnesses) {
    hs.push_back(Json{{"h", hw.h}, {"G", to_json(hw.G)}});
    out.line("h = " + std::to_string(hw.h) + ": G = " + (hw.G.empty ? std::string("empty") : vertices_of(hw.G)));
  }
  out.json["witnesses"] = hs;
  out.json["mutation"] = to_json(Pp.P);
  out.line("mutation: " + vertices_of(Pp.P));
  return out;
}

Json family_json(const MutationFamily& fam) {
  Json w = Json::array();
  for (const auto& x : fam.weights) w.push_back(to_json(x));
  Json j{{"mutation", to_json(fam.P_prime.P)}, {"variables", variables_json(fam.cox)}, {"weights", w},
         {"trinomial", polynomial_json(fam.cox, fam.trinomial)}, {"monomial", polynomial_json(fam.cox, fam.monomial)},
         {"fiber_P", polynomial_json(fam.cox, fam.fiber_P)}, {"inverse_recovers_P", fam.inverse_recovers_P}};
  if (fam.fiber_P_prime) j["fiber_P_prime"] = polynomial_json(fam.cox, *fam.fiber_P_prime);
  return j;
}

Output cmd_family(const Options& o) {
  Output out;
  MutationInput in = mutation_input(o);
  MutationFamily fam = mutation_family(in.P, in.d, aliases_of(o));
  out.json = family_json(fam);
  out.line("mutation: " + vertices_of(fam.P_prime.P));
  std::string ws;
  for (std::size_t j : fam.cox.display_order)
    ws += (ws.empty() ? "" : " ") + fam.cox.names[j] + fam.cox.rays[j].str() + ":" + fam.weights[j].get_str();
  out.line("weights: " + ws);
  out.line("trinomial: " + format_polynomial(fam.cox, fam.trinomial));
  out.line("monomial: " + format_polynomial(fam.cox, fam.monomial));
  out.line("fiber [0:1:-1]: " + format_polynomial(fam.cox, specialize_fiber(fam, 0, 1, -1).trinomial));
  if (fam.fiber_P_prime) out.line("fiber [1:0:-1]: " + format_polynomial(fam.cox, specialize_fiber(fam, 1, 0, -1).trinomial));
  out.line(std::string("inverse mutation recovers P: ") + (fam.inverse_recovers_P ? "yes" : "no"));
  if (!fam.inverse_recovers_P) out.status = 1;
  return out;
}

Output cmd_fiber(const Options& o) {
  Output out;
  if (o.point.empty()) throw SchemaError("fiber needs --point a:b:c");
  auto abc = json_io::parameter_point_from(o.point);
  MutationInput in = mutation_input(o);
  MutationFamily fam = mutation_family(in.P, in.d, aliases_of(o));
  FiberReport r = specialize_fiber(fam, abc[0], abc[1], abc[2]);
  out.json = Json{{"point", r.point.str()}, {"kind", to_string(r.kind)},
                  {"trinomial", polynomial_json(fam.cox, r.trinomial)}, {"monomial", polynomial_json(fam.cox, r.monomial)},
                  {"matches_toric", r.matches_toric}};
  out.line("point " + r.point.str() + " (" + to_string(r.kind) + ")");
  out.line("trinomial: " + format_polynomial(fam.cox, r.trinomial));
  out.line("monomial: " + format_polynomial(fam.cox, r.monomial));
  if (r.kind != FiberKind::Generic) {
    out.line(std::string("agrees with the toric binomial: ") + (r.matches_toric ? "yes" : "no"));
    if (!r.matches_toric) out.status = 1;
  }
  return out;
}

Output cmd_hilbert(const Options& o) {
  Output out;
  Json j = read_json(o.input);
  Cone c = json_io::cone_from(j.contains("cone") ? j["cone"] : j);
  LatticeVector ell = j.contains("functional") ? json_io::lattice_vector_from(j["functional"], "functional", c.rank)
                                               : LatticeVector(c.rank);
  if (!j.contains("functional")) {
    if (!c.is_strongly_convex() || !c.is_full_dimensional()) ell = LatticeVector(c.rank);
    else ell = facet_sum_functional(c);
  }
  HilbertBasis hb = hilbert_basis(c, ell, o.bound);
  out.json = Json{{"generators", to_json(hb.generators)}, {"functional", to_json(hb.functional)},
                  {"bound", o.bound}, {"may_be_truncated", hb.may_be_truncated}};
  for (const auto& g : hb.generators) out.line(g.str());
  if (hb.may_be_truncated)
    out.line("warning: bound " + std::to_string(o.bound) + " is below " +
             Integer(hilbert_degree_bound(c, ell) - 1).get_str() + "; generators may be missing");
  return out;
}

Output cmd_oracle(const Options& o) {
  Output out;
  DeformationDatum d = json_io::datum_from(read_json(o.input));
  if (!checked_datum(out, d)) return out;
  TildeData t = build_tilde(d);
  std::vector<OracleReport> reps{degree_zero_equality_check(t, o.bound)};
  if (d.boundary) reps.push_back(boundary_equality_check(t, o.bound));
  Json arr = Json::array();
  for (const auto& r : reps) {
    arr.push_back(to_json(r));
    out.line(r.check + ": " + std::to_string(r.checked) + " checked, " + std::to_string(r.failures.size()) + " failures");
    for (const auto& f : r.failures) out.line("  " + f.r.str() + " / " + f.s.str() + ": " + f.reason);
    if (!r.ok()) out.status = 1;
  }
  out.json["bound"] = o.bound;
  out.json["reports"] = arr;
  return out;
}

Output cmd_verify(const Options& o) {
  Output out;
  PresetReport r = verify_example(o.input, o.p);
  out.json = r.json;
  out.lines = r.lines;
  for (const auto& m : r.mismatches) out.line("MISMATCH " + m);
  out.line(r.name + ": " + (r.ok() ? "PASS" : "FAIL"));
  if (!r.ok()) out.status = 1;
  return out;
}

Output dispatch(const Options& o) {
  if (o.command == "validate-datum") return cmd_validate(o);
  if (o.command == "tilde") return cmd_tilde(o);
  if (o.command == "equations") return cmd_equations(o);
  if (o.command == "polarize") return cmd_polarize(o);
  if (o.command == "mutate") return cmd_mutate(o);
  if (o.command == "family") return cmd_family(o);
  if (o.command == "fiber") return cmd_fiber(o);
  if (o.command == "hilbert-basis") return cmd_hilbert(o);
  if (o.command == "oracle") return cmd_oracle(o);
  return cmd_verify(o);
}

void emit(const Options& o, const Output& out) {
  if (o.format == "json") {
    std::cout << json_io::dump(out.json) << "\n";
  } else {
    for (const auto& l : out.lines) std::cout << l << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deformations of toric varieties and pairs via Minkowski decompositions"};
  app.require_subcommand(1, 1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "pretty"}));
  app.add_option("--alias", o.alias_file, "Alias table JSON file");

  struct Spec {
    const char* name;
    const char* help;
    const char* arg;
  };
  const Spec specs[] = {
      {"validate-datum", "Check conditions of a deformation datum", "Datum JSON file (- for stdin)"},
      {"tilde", "Build the enlarged cone and check its structure", "Datum JSON file"},
      {"equations", "Binomials, trinomials and the boundary monomial", "Datum JSON file"},
      {"polarize", "Polarised toric variety, optionally with a datum over tau", "Polarised variety JSON file"},
      {"mutate", "Mutate a Fano polygon or polytope", "Mutation JSON file"},
      {"family", "The one-parameter family joining P and its mutation", "Mutation JSON file"},
      {"fiber", "Specialise the family at a point of the parameter line", "Mutation JSON file"},
      {"hilbert-basis", "Hilbert basis of a cone in M up to a degree bound", "Cone JSON file"},
      {"oracle", "Bounded-degree ideal equality checks", "Datum JSON file"},
      {"verify-example", "Run a named example against golden values", "cA1 | p2-p114 | hexagon | toy-plane"},
  };
  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("input", o.input, s.arg)->required();
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "pretty"}));
    sub->add_option("--alias", o.alias_file, "Alias table JSON file");
    sub->add_option("--bound", o.bound, "Degree bound")->check(CLI::NonNegativeNumber);
    sub->add_option("--p", o.p, "cA1 parameter")->check(CLI::PositiveNumber);
    sub->add_option("--point", o.point, "Parameter point a:b:c");
    sub->callback([&o, name = std::string(s.name)] { o.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Output out = dispatch(o);
    emit(o, out);
    return out.status;
  } catch (const SchemaError& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    Output out;
    out.json = Json{{"error", Json{{"code", to_string(e.code())}, {"message", e.what()}}}};
    out.line(std::string("error: ") + e.what());
    emit(o, out);
    return 1;
  }
}
