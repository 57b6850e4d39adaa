#pragma once

// Exact integer/rational scalars and the small dense linear algebra the
// lattice code needs (determinants, inverses, Smith normal form).

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "lieint/errors.hpp"

namespace lieint {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Integer coordinate vector (lattice points in a fixed basis).
using IntVector = std::vector<std::int64_t>;
using RationalVector = std::vector<Rational>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline double to_double(const Rational& q) {
  return q.convert_to<double>();
}

/// Natural log of |n|; stays finite for integers far beyond double range.
inline double log_abs(const BigInt& n) {
  if (n == 0) return -HUGE_VAL;
  BigInt a = abs(n);
  const unsigned bits = boost::multiprecision::msb(a) + 1;
  if (bits <= 1000) return std::log(a.convert_to<double>());
  const unsigned shift = bits - 64;
  BigInt top = a >> shift;
  return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

/// x mod 1 in [0, 1).
inline Rational frac(const Rational& x) {
  BigInt n = numerator(x);
  BigInt d = denominator(x);
  BigInt r = n % d;
  if (r < 0) r += d;
  return Rational(r, d);
}

inline std::int64_t to_int64(const Rational& q) {
  if (!is_integer(q)) throw InternalError("expected an integer, got " + q.str());
  return numerator(q).convert_to<std::int64_t>();
}

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InternalError("matrix shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) throw InternalError("matrix/vector shape mismatch");
    std::vector<T> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  template <class U>
  Matrix<U> cast() const {
    Matrix<U> m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = U((*this)(i, j));
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using RationalMatrix = Matrix<Rational>;

inline RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = make_rational(m(i, j));
  return r;
}

inline Rational determinant(RationalMatrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw InternalError("determinant of a non-square matrix");
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c) == 0) continue;
      Rational f = m(r, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Gauss-Jordan inverse; throws on a singular matrix.
inline RationalMatrix inverse(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw InternalError("inverse of a non-square matrix");
  RationalMatrix m = a;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) throw InternalError("inverse of a singular matrix");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    const Rational piv = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m(r, c) == 0) continue;
      const Rational f = m(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) -= f * m(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

inline RationalVector solve(const RationalMatrix& a, const RationalVector& b) {
  return inverse(a) * b;
}

/// Sylvester's criterion in exact arithmetic: every leading principal minor > 0.
inline bool is_positive_definite(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (a(i, j) != a(j, i)) return false;
  for (std::size_t k = 1; k <= n; ++k) {
    RationalMatrix sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(i, j);
    if (determinant(sub) <= 0) return false;
  }
  return true;
}

/// Result of a Smith normal form P * A * Q = diag(divisors) for square A.
/// Only the column transform Q is kept; P is not needed by callers.
struct SmithForm {
  std::vector<std::int64_t> divisors;
  IntMatrix col_transform;
};

inline SmithForm smith_normal_form(IntMatrix a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw InternalError("Smith normal form of a non-square matrix");
  IntMatrix q = IntMatrix::identity(n);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < n; ++c) std::swap(a(i, c), a(j, c));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < n; ++r) {
      std::swap(a(r, i), a(r, j));
      std::swap(q(r, i), q(r, j));
    }
  };
  // row_i -= f * row_j
  auto sub_row = [&](std::size_t i, std::size_t j, std::int64_t f) {
    for (std::size_t c = 0; c < n; ++c) a(i, c) -= f * a(j, c);
  };
  // col_i -= f * col_j
  auto sub_col = [&](std::size_t i, std::size_t j, std::int64_t f) {
    for (std::size_t r = 0; r < n; ++r) {
      a(r, i) -= f * a(r, j);
      q(r, i) -= f * q(r, j);
    }
  };

  for (std::size_t t = 0; t < n; ++t) {
    // Bring the smallest nonzero entry of the trailing block to (t, t).
    for (;;) {
      std::size_t bi = n, bj = n;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a(i, j) != 0 && (bi == n || std::llabs(a(i, j)) < std::llabs(a(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == n) break;  // trailing block is zero
      swap_rows(t, bi);
      swap_cols(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        sub_row(i, t, a(i, t) / a(t, t));
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        sub_col(j, t, a(t, j) / a(t, t));
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: the pivot must divide every remaining entry.
      std::size_t bad_row = n;
      for (std::size_t i = t + 1; i < n && bad_row == n; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (bad_row == n) break;
      for (std::size_t c = 0; c < n; ++c) a(t, c) += a(bad_row, c);
    }
  }

  SmithForm out;
  out.divisors.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, i) < 0) {
      for (std::size_t r = 0; r < n; ++r) q(r, i) = -q(r, i);
      a(i, i) = -a(i, i);
    }
    out.divisors[i] = a(i, i);
  }
  out.col_transform = q;
  return out;
}

inline std::int64_t gcd_of(const std::vector<std::int64_t>& xs) {
  std::int64_t g = 0;
  for (auto x : xs) g = std::gcd(g, x);
  return g;
}

}  // namespace lieint
