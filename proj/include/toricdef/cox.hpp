#pragma once

// Cox coordinates of a toric variety given by its rays, the class group
// grading, and the binomial / trinomial / monomial equations read off the
// pairings of sigma~.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "toricdef/datum.hpp"

namespace toricdef {

/// scalar * param, or a plain integer when param is empty.
struct Coefficient {
  Integer scalar = 1;
  std::string param;

  friend bool operator==(const Coefficient&, const Coefficient&) = default;

  /// "+t1", "-1", "+a", "-3*b".
  std::string str() const {
    std::string s = scalar < 0 ? "-" : "+";
    Integer a = abs(scalar);
    if (param.empty()) return s + a.get_str();
    if (a == 1) return s + param;
    return s + a.get_str() + "*" + param;
  }
};

struct Term {
  Coefficient coeff;
  std::vector<Integer> exps;

  friend bool operator==(const Term&, const Term&) = default;
};

struct CoxPolynomial {
  std::vector<Term> terms;

  friend bool operator==(const CoxPolynomial&, const CoxPolynomial&) = default;

  bool is_monomial() const { return terms.size() == 1; }

  /// Indices of variables with a positive exponent in any term.
  std::set<std::size_t> support() const {
    std::set<std::size_t> s;
    for (const auto& t : terms)
      for (std::size_t j = 0; j < t.exps.size(); ++j)
        if (t.exps[j] > 0) s.insert(j);
    return s;
  }
};

inline CoxPolynomial monomial(const std::vector<Integer>& exps, Coefficient c = {}) {
  return CoxPolynomial{{Term{std::move(c), exps}}};
}

/// Substitutes integer values for the named parameters and merges terms with
/// equal exponent vectors and parameter. Zero terms are dropped.
inline CoxPolynomial specialize(const CoxPolynomial& f, const std::map<std::string, Integer>& values) {
  CoxPolynomial out;
  for (const auto& t : f.terms) {
    Term s = t;
    auto it = values.find(t.coeff.param);
    if (!t.coeff.param.empty() && it != values.end()) {
      s.coeff.scalar *= it->second;
      s.coeff.param.clear();
    }
    auto same = std::find_if(out.terms.begin(), out.terms.end(), [&](const Term& o) {
      return o.exps == s.exps && o.coeff.param == s.coeff.param;
    });
    if (same != out.terms.end()) same->coeff.scalar += s.coeff.scalar;
    else out.terms.push_back(std::move(s));
  }
  out.terms.erase(std::remove_if(out.terms.begin(), out.terms.end(), [](const Term& t) { return t.coeff.scalar == 0; }),
                  out.terms.end());
  return out;
}

inline CoxPolynomial negate(CoxPolynomial f) {
  for (auto& t : f.terms) t.coeff.scalar = -t.coeff.scalar;
  return f;
}

/// Same terms regardless of order.
inline bool same_terms(const CoxPolynomial& a, const CoxPolynomial& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (const auto& t : a.terms)
    if (std::find(b.terms.begin(), b.terms.end(), t) == b.terms.end()) return false;
  return true;
}

/// Optional user-facing names: ray -> name. Table order is display order.
struct AliasTable {
  std::vector<std::pair<LatticeVector, std::string>> entries;
};

struct CoxSystem {
  std::vector<LatticeVector> rays;
  Cokernel grading;
  std::vector<std::string> names;
  /// display_order[p] = variable index printed at position p within a monomial.
  std::vector<std::size_t> display_order;
  std::vector<std::string> parameters;

  std::size_t size() const { return rays.size(); }

  std::optional<std::size_t> index_of(const LatticeVector& ray) const {
    auto it = std::find(rays.begin(), rays.end(), ray);
    if (it == rays.end()) return std::nullopt;
    return static_cast<std::size_t>(it - rays.begin());
  }

  GroupElement degree(const std::vector<Integer>& exps) const { return grading.degree_of(exps); }
};

/// Grading from the divisor sequence: the cokernel of the ray matrix.
/// Rays that do not span the lattice are rejected.
inline CoxSystem make_cox_system(const std::vector<LatticeVector>& rays, std::size_t rank,
                                 const AliasTable& aliases = {}, std::vector<std::string> parameters = {}) {
  CoxSystem s;
  s.rays = rays;
  s.grading = cokernel(IntMatrix::from_rows(rays, rank));
  if (s.grading.map_kernel_rank != 0)
    throw Error(ErrorCode::NotFullDimensional, "rays do not span a full-rank sublattice");
  s.parameters = std::move(parameters);
  for (std::size_t j = 0; j < rays.size(); ++j) s.names.push_back("x" + std::to_string(j));
  std::vector<bool> placed(rays.size(), false);
  for (const auto& [ray, name] : aliases.entries) {
    auto j = s.index_of(ray);
    if (!j) continue;
    s.names[*j] = name;
    if (!placed[*j]) {
      s.display_order.push_back(*j);
      placed[*j] = true;
    }
  }
  for (std::size_t j = 0; j < rays.size(); ++j)
    if (!placed[j]) s.display_order.push_back(j);
  return s;
}

inline std::string format_monomial(const CoxSystem& s, const std::vector<Integer>& exps) {
  std::string out;
  for (std::size_t j : s.display_order) {
    if (exps[j] == 0) continue;
    if (!out.empty()) out += "*";
    out += s.names[j];
    if (exps[j] != 1) out += "^" + exps[j].get_str();
  }
  return out;
}

/// "x*y - u^2 - t1*z^3".
inline std::string format_polynomial(const CoxSystem& s, const CoxPolynomial& f) {
  if (f.terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    const Term& t = f.terms[i];
    std::string mono = format_monomial(s, t.exps);
    Integer a = abs(t.coeff.scalar);
    std::string body;
    if (a != 1) body = a.get_str();
    if (!t.coeff.param.empty()) body += (body.empty() ? "" : "*") + t.coeff.param;
    if (!mono.empty()) body += (body.empty() ? "" : "*") + mono;
    if (body.empty()) body = "1";
    bool neg = t.coeff.scalar < 0;
    if (i == 0) out += (neg ? "-" : "") + body;
    else out += (neg ? " - " : " + ") + body;
  }
  return out;
}

inline std::vector<std::string> trinomial_parameters(std::size_t k) {
  std::vector<std::string> p;
  for (std::size_t i = 1; i <= k; ++i) p.push_back("t" + std::to_string(i));
  return p;
}

inline CoxSystem cox_system(const TildeData& t, const AliasTable& aliases = {}) {
  return make_cox_system(t.rays, t.n + t.k, aliases, trinomial_parameters(t.k));
}

namespace detail {

struct PositiveNegative {
  std::vector<Integer> y, z;
};

inline PositiveNegative split_pairing(const std::vector<std::vector<Integer>>& pairings, std::size_t i) {
  PositiveNegative pn{std::vector<Integer>(pairings.size()), std::vector<Integer>(pairings.size())};
  for (std::size_t j = 0; j < pairings.size(); ++j) {
    const Integer& a = pairings[j][i];
    if (a > 0) pn.y[j] = a;
    else if (a < 0) pn.z[j] = -a;
  }
  return pn;
}

}  // namespace detail

/// y_i - z_i for i = 1..k from a table of e_i*-pairings per ray.
inline std::vector<CoxPolynomial> binomials_from_pairings(const std::vector<std::vector<Integer>>& pairings,
                                                          std::size_t k) {
  std::vector<CoxPolynomial> out;
  for (std::size_t i = 0; i < k; ++i) {
    auto pn = detail::split_pairing(pairings, i);
    out.push_back(CoxPolynomial{{Term{{1, ""}, pn.y}, Term{{-1, ""}, pn.z}}});
  }
  return out;
}

/// y_i - z_i - t_i * x^{<w~,.>} * z_i; throws NegativeExponent when the
/// third monomial would need a negative power.
inline std::vector<CoxPolynomial> trinomials_from_pairings(const std::vector<LatticeVector>& rays,
                                                           const std::vector<std::vector<Integer>>& pairings,
                                                           const std::vector<Integer>& w_pairings, std::size_t k) {
  std::vector<CoxPolynomial> out;
  for (std::size_t i = 0; i < k; ++i) {
    auto pn = detail::split_pairing(pairings, i);
    std::vector<Integer> third(rays.size());
    for (std::size_t j = 0; j < rays.size(); ++j) {
      third[j] = w_pairings[j] + pn.z[j];
      if (third[j] < 0)
        throw Error(ErrorCode::NegativeExponent,
                    "ray " + rays[j].str() + " gets exponent " + third[j].get_str() + " in trinomial " +
                        std::to_string(i + 1));
    }
    out.push_back(CoxPolynomial{
        {Term{{1, ""}, pn.y}, Term{{-1, ""}, pn.z}, Term{{-1, "t" + std::to_string(i + 1)}, third}}});
  }
  return out;
}

inline std::vector<CoxPolynomial> binomials(const TildeData& t) { return binomials_from_pairings(t.pairings, t.k); }

inline std::vector<CoxPolynomial> trinomials(const TildeData& t) {
  return trinomials_from_pairings(t.rays, t.pairings, t.w_pairings, t.k);
}

struct BoundaryMonomial {
  CoxPolynomial monomial;
  /// No ray qualifies; the product is 1.
  bool degenerate = false;
};

/// Product of the variables whose rays pair non-positively with every e_i*.
inline BoundaryMonomial boundary_monomial_from_pairings(const std::vector<std::vector<Integer>>& pairings) {
  std::vector<Integer> e(pairings.size());
  bool any = false;
  for (std::size_t j = 0; j < pairings.size(); ++j) {
    bool ok = std::all_of(pairings[j].begin(), pairings[j].end(), [](const Integer& a) { return a <= 0; });
    if (ok) {
      e[j] = 1;
      any = true;
    }
  }
  return BoundaryMonomial{monomial(e), !any};
}

inline BoundaryMonomial boundary_monomial(const TildeData& t) { return boundary_monomial_from_pairings(t.pairings); }

/// Rank k and at most one positive entry per column.
inline bool fischer_shapiro_check(const IntMatrix& m) {
  if (rank_of(m) != m.rows()) return false;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) pos += m(i, j) > 0;
    if (pos > 1) return false;
  }
  return true;
}

namespace detail {

inline std::set<std::size_t> support_of(const std::vector<Integer>& e) {
  std::set<std::size_t> s;
  for (std::size_t j = 0; j < e.size(); ++j)
    if (e[j] > 0) s.insert(j);
  return s;
}

inline bool disjoint(const std::set<std::size_t>& a, const std::set<std::size_t>& b) {
  for (auto x : a)
    if (b.count(x)) return false;
  return true;
}

}  // namespace detail

/// Combinatorial hypotheses of the two regular-sequence criteria.
/// Binomials y_i - z_0 plus a monomial: y_1..y_k nontrivial with pairwise
/// disjoint supports, all sharing the same z_0, the monomial reduced and
/// disjoint from every y_i, and supp(z_0) inside supp(monomial).
/// A single trinomial plus a monomial: no variable of the monomial divides
/// every term of the trinomial.
inline bool disjoint_support_regular_sequence(const std::vector<CoxPolynomial>& polys, const CoxPolynomial& mono) {
  if (!mono.is_monomial()) return false;
  const auto& m = mono.terms.front().exps;
  auto msupp = detail::support_of(m);
  if (msupp.empty()) return false;

  if (polys.size() == 1 && polys.front().terms.size() == 3) {
    for (auto v : msupp) {
      bool divides_all = std::all_of(polys.front().terms.begin(), polys.front().terms.end(),
                                     [&](const Term& t) { return t.exps[v] > 0; });
      if (divides_all) return false;
    }
    return true;
  }

  for (auto v : msupp)
    if (m[v] != 1) return false;
  std::optional<std::vector<Integer>> z0;
  std::vector<std::set<std::size_t>> ys;
  for (const auto& f : polys) {
    if (f.terms.size() != 2) return false;
    const Term* y = nullptr;
    const Term* z = nullptr;
    for (const auto& t : f.terms) (t.coeff.scalar > 0 ? y : z) = &t;
    if (!y || !z || !y->coeff.param.empty() || !z->coeff.param.empty()) return false;
    if (abs(y->coeff.scalar) != 1 || abs(z->coeff.scalar) != 1) return false;
    if (z0 && *z0 != z->exps) return false;
    z0 = z->exps;
    auto ysupp = detail::support_of(y->exps);
    if (ysupp.empty()) return false;
    ys.push_back(std::move(ysupp));
  }
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (!detail::disjoint(ys[i], msupp)) return false;
    for (std::size_t j = i + 1; j < ys.size(); ++j)
      if (!detail::disjoint(ys[i], ys[j])) return false;
  }
  if (z0)
    for (auto v : detail::support_of(*z0))
      if (!msupp.count(v)) return false;
  return true;
}

/// Degree of f if every term has the same class (parameters have degree 0).
inline std::optional<GroupElement> homogeneous_degree(const CoxSystem& s, const CoxPolynomial& f) {
  std::optional<GroupElement> deg;
  for (const auto& t : f.terms) {
    if (t.exps.size() != s.size()) throw Error(ErrorCode::RankMismatch, "exponent vector length");
    GroupElement d = s.degree(t.exps);
    if (deg && !(*deg == d)) return std::nullopt;
    deg = d;
  }
  if (!deg) return s.grading.zero();
  return deg;
}

inline bool is_homogeneous(const CoxSystem& s, const CoxPolynomial& f) { return homogeneous_degree(s, f).has_value(); }

}  // namespace toricdef
