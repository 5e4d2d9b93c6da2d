#pragma once

// Exact integer and rational linear algebra: lattice vectors, integer
// matrices, Smith normal form and cokernels of integer maps.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "toricdef/error.hpp"

namespace toricdef {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer gcd_of(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm_of(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline int sign_of(const Integer& a) { return sgn(a); }
inline int sign_of(const Rational& a) { return sgn(a); }

/// Coordinate tuple over an exact scalar type. The rank is the tuple length.
template <class Scalar>
class BasicVector {
 public:
  using value_type = Scalar;

  BasicVector() = default;
  explicit BasicVector(std::size_t rank) : coords_(rank, Scalar(0)) {}
  explicit BasicVector(std::vector<Scalar> coords) : coords_(std::move(coords)) {}
  BasicVector(std::initializer_list<long> coords) {
    coords_.reserve(coords.size());
    for (long c : coords) coords_.emplace_back(c);
  }

  std::size_t rank() const { return coords_.size(); }
  bool empty() const { return coords_.empty(); }

  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  Scalar& operator[](std::size_t i) { return coords_[i]; }

  const std::vector<Scalar>& coords() const { return coords_; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& c) { return c == 0; });
  }

  friend bool operator==(const BasicVector& a, const BasicVector& b) { return a.coords_ == b.coords_; }
  friend bool operator!=(const BasicVector& a, const BasicVector& b) { return !(a == b); }

  /// Lexicographic order; shorter tuples first.
  friend bool operator<(const BasicVector& a, const BasicVector& b) {
    if (a.rank() != b.rank()) return a.rank() < b.rank();
    for (std::size_t i = 0; i < a.rank(); ++i) {
      int c = cmp(a.coords_[i], b.coords_[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }

  friend BasicVector operator+(const BasicVector& a, const BasicVector& b) {
    require_same_rank(a, b);
    BasicVector r(a.rank());
    for (std::size_t i = 0; i < a.rank(); ++i) r.coords_[i] = a.coords_[i] + b.coords_[i];
    return r;
  }
  friend BasicVector operator-(const BasicVector& a, const BasicVector& b) {
    require_same_rank(a, b);
    BasicVector r(a.rank());
    for (std::size_t i = 0; i < a.rank(); ++i) r.coords_[i] = a.coords_[i] - b.coords_[i];
    return r;
  }
  friend BasicVector operator-(const BasicVector& a) {
    BasicVector r(a.rank());
    for (std::size_t i = 0; i < a.rank(); ++i) r.coords_[i] = -a.coords_[i];
    return r;
  }
  friend BasicVector operator*(const Scalar& s, const BasicVector& a) {
    BasicVector r(a.rank());
    for (std::size_t i = 0; i < a.rank(); ++i) r.coords_[i] = s * a.coords_[i];
    return r;
  }

  friend std::ostream& operator<<(std::ostream& os, const BasicVector& v) {
    os << '(';
    for (std::size_t i = 0; i < v.rank(); ++i) {
      if (i) os << ',';
      os << v.coords_[i];
    }
    return os << ')';
  }

  std::string str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
  }

 private:
  static void require_same_rank(const BasicVector& a, const BasicVector& b) {
    if (a.rank() != b.rank())
      throw Error(ErrorCode::RankMismatch,
                  "rank " + std::to_string(a.rank()) + " vs " + std::to_string(b.rank()));
  }

  std::vector<Scalar> coords_;
};

using LatticeVector = BasicVector<Integer>;
using RationalVector = BasicVector<Rational>;

template <class A, class B>
auto dot(const BasicVector<A>& a, const BasicVector<B>& b) {
  if (a.rank() != b.rank())
    throw Error(ErrorCode::RankMismatch,
                "pairing rank " + std::to_string(a.rank()) + " vs " + std::to_string(b.rank()));
  using R = std::conditional_t<std::is_same_v<A, Rational> || std::is_same_v<B, Rational>, Rational, Integer>;
  R s = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) s += a[i] * b[i];
  return s;
}

inline RationalVector to_rational(const LatticeVector& v) {
  RationalVector r(v.rank());
  for (std::size_t i = 0; i < v.rank(); ++i) r[i] = Rational(v[i]);
  return r;
}

inline bool is_integral(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& c) { return c.get_den() == 1; });
}

inline LatticeVector to_lattice(const RationalVector& v) {
  if (!is_integral(v)) throw Error(ErrorCode::NotIntegral, "vector " + v.str() + " is not integral");
  LatticeVector r(v.rank());
  for (std::size_t i = 0; i < v.rank(); ++i) r[i] = v[i].get_num();
  return r;
}

inline Integer content(const LatticeVector& v) {
  Integer g = 0;
  for (const auto& c : v) g = gcd_of(g, c);
  return g;
}

/// Divides by the gcd of the coordinates; the result is a positive multiple of v.
inline LatticeVector primitive(const LatticeVector& v) {
  Integer g = content(v);
  if (g == 0) throw Error(ErrorCode::ZeroVector, "primitive() of the zero vector");
  LatticeVector r(v.rank());
  for (std::size_t i = 0; i < v.rank(); ++i) r[i] = v[i] / g;
  return r;
}

inline bool is_primitive(const LatticeVector& v) { return content(v) == 1; }

/// Smallest positive integer multiple of a rational vector that is integral,
/// divided by its content. Zero maps to an error.
inline LatticeVector primitive(const RationalVector& v) {
  Integer den = 1;
  for (const auto& c : v) den = lcm_of(den, c.get_den());
  LatticeVector r(v.rank());
  for (std::size_t i = 0; i < v.rank(); ++i) r[i] = Rational(v[i] * den).get_num();
  return primitive(r);
}

/// Lowest common denominator of the coordinates.
inline Integer denominator(const RationalVector& v) {
  Integer den = 1;
  for (const auto& c : v) den = lcm_of(den, c.get_den());
  return den;
}

inline LatticeVector concat(const LatticeVector& a, const LatticeVector& b) {
  std::vector<Integer> c(a.coords());
  c.insert(c.end(), b.begin(), b.end());
  return LatticeVector(std::move(c));
}

inline RationalVector concat(const RationalVector& a, const RationalVector& b) {
  std::vector<Rational> c(a.coords());
  c.insert(c.end(), b.begin(), b.end());
  return RationalVector(std::move(c));
}

template <class S>
BasicVector<S> slice(const BasicVector<S>& v, std::size_t first, std::size_t count) {
  std::vector<S> c(v.begin() + static_cast<std::ptrdiff_t>(first),
                   v.begin() + static_cast<std::ptrdiff_t>(first + count));
  return BasicVector<S>(std::move(c));
}

inline LatticeVector unit_vector(std::size_t rank, std::size_t i) {
  LatticeVector e(rank);
  e[i] = 1;
  return e;
}

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorCode::InvalidInput, "ragged matrix literal");
      for (long x : r) data_.emplace_back(x);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// One row per vector.
  static IntMatrix from_rows(const std::vector<LatticeVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].rank() != cols) throw Error(ErrorCode::RankMismatch, "row " + std::to_string(i));
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  LatticeVector row(std::size_t r) const {
    LatticeVector v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(r, j);
    return v;
  }
  LatticeVector column(std::size_t c) const {
    LatticeVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
    return v;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::RankMismatch, "matrix product shape");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += f * (*this)(src, j);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += f * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Rank over the rationals (fraction-free elimination).
inline std::size_t rank_of(IntMatrix m) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(rank, piv);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (m(r, c) == 0) continue;
      Integer a = m(rank, c), b = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = a * m(r, j) - b * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

inline std::size_t rank_of(const std::vector<LatticeVector>& rows, std::size_t cols) {
  if (rows.empty()) return 0;
  return rank_of(IntMatrix::from_rows(rows, cols));
}

/// Determinant by Bareiss elimination.
inline Integer determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::RankMismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      m.swap_rows(k, piv);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Reduced row echelon basis (over Q) of the span of the given vectors,
/// each row scaled to a primitive integer vector with positive pivot.
inline std::vector<LatticeVector> canonical_span_basis(const std::vector<LatticeVector>& vecs, std::size_t dim) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& v : vecs) {
    std::vector<Rational> r(dim);
    for (std::size_t j = 0; j < dim; ++j) r[j] = v[j];
    rows.push_back(std::move(r));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < dim && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    Rational p = rows[rank][c];
    for (auto& x : rows[rank]) x /= p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      Rational f = rows[r][c];
      for (std::size_t j = 0; j < dim; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  std::vector<LatticeVector> out;
  for (std::size_t r = 0; r < rank; ++r) out.push_back(primitive(RationalVector(rows[r])));
  return out;
}

/// Orthogonal projection (standard inner product) of v onto the complement
/// of span(basis). The basis must be linearly independent.
inline RationalVector project_off(const RationalVector& v, const std::vector<LatticeVector>& basis) {
  const std::size_t m = basis.size();
  if (m == 0) return v;
  // Solve (B B^T) c = B v.
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) a[i][j] = Rational(dot(basis[i], basis[j]));
    a[i][m] = dot(to_rational(basis[i]), v);
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    while (a[piv][c] == 0) ++piv;
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t j = c; j <= m; ++j) a[r][j] -= f * a[c][j];
    }
  }
  RationalVector out = v;
  for (std::size_t i = 0; i < m; ++i) {
    Rational coef = a[i][m] / a[i][i];
    for (std::size_t j = 0; j < v.rank(); ++j) out[j] -= coef * basis[i][j];
  }
  return out;
}

/// Diagonal entries d_1 | d_2 | ... of the Smith normal form plus the
/// unimodular transforms with U * A * V = D.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::size_t rank() const {
    std::size_t r = 0;
    while (r < std::min(D.rows(), D.cols()) && D(r, r) != 0) ++r;
    return r;
  }
};

/// Pivot is always the entry of smallest absolute value in the trailing
/// submatrix, so the transforms are deterministic.
inline SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithForm s{IntMatrix::identity(m), a, IntMatrix::identity(n)};
  IntMatrix& d = s.D;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // smallest nonzero |entry| in d[t.., t..]
      std::size_t pr = m, pc = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (d(i, j) == 0) continue;
          if (pr == m || abs(d(i, j)) < abs(d(pr, pc))) {
            pr = i;
            pc = j;
          }
        }
      if (pr == m) return s;  // trailing block is zero

      d.swap_rows(t, pr);
      s.U.swap_rows(t, pr);
      d.swap_cols(t, pc);
      s.V.swap_cols(t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        d.add_row(i, t, -q);
        s.U.add_row(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        d.add_col(j, t, -q);
        s.V.add_col(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility: pivot must divide the whole trailing block
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      d.add_row(t, bad, Integer(1));
      s.U.add_row(t, bad, Integer(1));
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      s.U.negate_row(t);
    }
  }
  return s;
}

/// Finitely generated abelian group Z^free_rank + sum Z/torsion_j, d_j | d_{j+1}.
struct AbelianGroupPresentation {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  friend bool operator==(const AbelianGroupPresentation&, const AbelianGroupPresentation&) = default;
};

/// An element of an AbelianGroupPresentation: torsion residues then free part.
struct GroupElement {
  std::vector<Integer> torsion;
  std::vector<Integer> free;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

  std::string str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < free.size(); ++i) os << (i ? "," : "") << free[i];
    os << ')';
    if (!torsion.empty()) {
      os << "+[";
      for (std::size_t i = 0; i < torsion.size(); ++i) os << (i ? "," : "") << torsion[i];
      os << ']';
    }
    return os.str();
  }
};

/// Z^rows / image(A) together with the class of every standard basis vector.
struct Cokernel {
  AbelianGroupPresentation group;
  std::vector<GroupElement> degrees;
  /// Dimension of ker(A); nonzero means the map is not injective, which for a
  /// ray matrix signals rays that do not span the lattice.
  std::size_t map_kernel_rank = 0;

  GroupElement zero() const {
    return GroupElement{std::vector<Integer>(group.torsion.size(), 0), std::vector<Integer>(group.free_rank, 0)};
  }

  /// Class of sum_i coeffs[i] * e_i.
  GroupElement degree_of(const std::vector<Integer>& coeffs) const {
    GroupElement g = zero();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      for (std::size_t j = 0; j < g.free.size(); ++j) g.free[j] += coeffs[i] * degrees[i].free[j];
      for (std::size_t j = 0; j < g.torsion.size(); ++j) g.torsion[j] += coeffs[i] * degrees[i].torsion[j];
    }
    for (std::size_t j = 0; j < g.torsion.size(); ++j) {
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), g.torsion[j].get_mpz_t(), group.torsion[j].get_mpz_t());
      g.torsion[j] = r;
    }
    return g;
  }
};

/// Cokernel of A : Z^cols -> Z^rows read off the Smith form. Free coordinates
/// are sign-normalized so the first variable with a nonzero entry is positive.
inline Cokernel cokernel(const IntMatrix& a) {
  SmithForm s = smith_normal_form(a);
  const std::size_t r = s.rank();
  const std::size_t m = a.rows();
  Cokernel out;
  out.map_kernel_rank = a.cols() - r;
  std::vector<std::size_t> torsion_rows;
  for (std::size_t j = 0; j < r; ++j)
    if (s.D(j, j) != 1) {
      torsion_rows.push_back(j);
      out.group.torsion.push_back(s.D(j, j));
    }
  out.group.free_rank = m - r;

  for (std::size_t f = r; f < m; ++f) {
    for (std::size_t i = 0; i < m; ++i) {
      if (s.U(f, i) == 0) continue;
      if (s.U(f, i) < 0) s.U.negate_row(f);
      break;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    GroupElement g;
    for (std::size_t t = 0; t < torsion_rows.size(); ++t) {
      Integer res;
      mpz_fdiv_r(res.get_mpz_t(), s.U(torsion_rows[t], i).get_mpz_t(), out.group.torsion[t].get_mpz_t());
      g.torsion.push_back(res);
    }
    for (std::size_t f = r; f < m; ++f) g.free.push_back(s.U(f, i));
    out.degrees.push_back(std::move(g));
  }
  return out;
}

}  // namespace toricdef
