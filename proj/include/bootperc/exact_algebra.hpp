#pragma once

// Exact linear algebra over Q. Integers and rationals come from
// Boost.Multiprecision; everything else (matrices, elimination, the
// general-position matrix and its dependency coefficients) is here.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bootperc/combinatorics.hpp"
#include "bootperc/errors.hpp"

namespace bootperc {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;

/// "p/q" with q > 0 and gcd(|p|, q) = 1; integers are written "p/1".
inline std::string to_fraction_string(const Rational& x) {
  return boost::multiprecision::numerator(x).str() + "/" + boost::multiprecision::denominator(x).str();
}

inline bool is_zero(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

/// Dense row-major matrix of rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix from_rows(const std::vector<RationalVector>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    RationalMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols)
        throw InvalidInput("ragged matrix: row " + std::to_string(i) + " has " +
                           std::to_string(rows[i].size()) + " entries, expected " + std::to_string(cols));
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Rational> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  RationalVector row_vector(std::size_t i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
  }

  /// Rows selected by 0-based index, in the given order.
  RationalMatrix select_rows(std::span<const std::size_t> which) const {
    RationalMatrix out(which.size(), cols_);
    for (std::size_t i = 0; i < which.size(); ++i) {
      if (which[i] >= rows_) throw InvalidInput("row index out of range");
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(which[i], j);
    }
    return out;
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

namespace detail {

// Scales each row by the lcm of its denominators. Returns the integer matrix
// and the product of the scale factors.
inline std::pair<std::vector<std::vector<Integer>>, Integer> clear_denominators(const RationalMatrix& m) {
  std::vector<std::vector<Integer>> out(m.rows(), std::vector<Integer>(m.cols()));
  Integer scale = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (const auto& x : m.row(i)) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational& x = m(i, j);
      out[i][j] = boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x));
    }
    scale *= l;
  }
  return {std::move(out), scale};
}

// Bareiss fraction-free elimination in place. Every division is exact.
// Returns the rank; `sign` tracks row swaps, `last_pivot` the final pivot.
inline std::size_t bareiss(std::vector<std::vector<Integer>>& a, std::size_t cols, int& sign, Integer& last_pivot) {
  const std::size_t rows = a.size();
  Integer prev = 1;
  std::size_t r = 0;
  sign = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  last_pivot = prev;
  return r;
}

}  // namespace detail

inline std::size_t rank(const RationalMatrix& m) {
  auto [a, scale] = detail::clear_denominators(m);
  int sign = 1;
  Integer last;
  return detail::bareiss(a, m.cols(), sign, last);
}

inline Rational determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("determinant of a non-square matrix");
  if (m.rows() == 0) return Rational(1);
  auto [a, scale] = detail::clear_denominators(m);
  int sign = 1;
  Integer last;
  if (detail::bareiss(a, m.cols(), sign, last) < m.rows()) return Rational(0);
  return Rational(sign * last, scale);
}

/// The n x (t-1) matrix whose first t-1 rows are the identity and whose row
/// i >= t is (i^0, i^1, ..., i^{t-2}). Any t-1 rows are independent: each
/// maximal minor is, up to sign, a minor of a Vandermonde matrix with
/// distinct positive nodes, and those are positive.
inline RationalMatrix build_general_position_matrix(int n, int t) {
  if (t < 2 || t > n)
    throw InvalidInput("general position matrix needs 2 <= t <= n, got n=" + std::to_string(n) +
                       " t=" + std::to_string(t));
  const auto cols = static_cast<std::size_t>(t - 1);
  RationalMatrix m(static_cast<std::size_t>(n), cols);
  for (std::size_t i = 0; i < cols; ++i) m(i, i) = 1;
  for (int i = t; i <= n; ++i) {
    Integer power = 1;
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<std::size_t>(i - 1), j) = Rational(power);
      power *= i;
    }
  }
  return m;
}

/// True iff every (t-1)-subset of rows of M has full rank t-1.
inline bool verify_general_position(const RationalMatrix& m, int t) {
  if (t < 2 || m.cols() != static_cast<std::size_t>(t - 1))
    throw InvalidInput("matrix has " + std::to_string(m.cols()) + " columns, expected t-1 = " +
                       std::to_string(t - 1));
  bool ok = true;
  for_each_combination<std::size_t>(m.rows(), m.cols(), [&](const std::vector<std::size_t>& rows) {
    ok = rank(m.select_rows(rows)) == m.cols();
    return ok;
  });
  return ok;
}

/// Coefficients lambda with sum_{i in I} lambda_i * M[i] = 0, for a sorted
/// set I of cols(M)+1 one-based row indices. lambda_j = (-1)^j times the
/// minor of M restricted to I with its j-th row removed (j one-based), so the
/// entries are integers and fixed up to no rescaling.
inline RationalVector dependency_coeffs(const RationalMatrix& m, std::span<const int> rows) {
  const std::size_t t = m.cols() + 1;
  if (rows.size() != t)
    throw InvalidInput("dependency needs exactly " + std::to_string(t) + " rows, got " +
                       std::to_string(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 1 || static_cast<std::size_t>(rows[i]) > m.rows())
      throw InvalidInput("row index " + std::to_string(rows[i]) + " out of range");
    if (i > 0 && rows[i] <= rows[i - 1]) throw InvalidInput("row indices must be strictly increasing");
  }
  RationalVector lambda(t);
  std::vector<std::size_t> keep;
  keep.reserve(t - 1);
  for (std::size_t j = 0; j < t; ++j) {
    keep.clear();
    for (std::size_t i = 0; i < t; ++i)
      if (i != j) keep.push_back(static_cast<std::size_t>(rows[i] - 1));
    const Rational minor = determinant(m.select_rows(keep));
    // (-1)^j with one-based j
    lambda[j] = (j % 2 == 0) ? Rational(-minor) : minor;
    if (lambda[j] == 0)
      throw CertificateInvalid("zero dependency coefficient: matrix is not in general position");
  }
  return lambda;
}

/// Incrementally maintained row-echelon basis of a subspace of Q^dim.
/// Stored rows have leading entry 1 at strictly increasing pivot columns.
class EliminationBasis {
 public:
  explicit EliminationBasis(std::size_t dim) : dim_(dim) {}

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  const std::vector<RationalVector>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool in_span(const RationalVector& v) const { return is_zero(reduce(v)); }

  /// Adds v if it is independent of the current span; returns whether it was.
  bool insert(const RationalVector& v) {
    RationalVector rem = reduce(v);
    auto lead = std::find_if(rem.begin(), rem.end(), [](const Rational& x) { return x != 0; });
    if (lead == rem.end()) return false;
    const auto col = static_cast<std::size_t>(lead - rem.begin());
    const Rational inv = 1 / *lead;
    for (auto& x : rem) x *= inv;
    const auto at = std::lower_bound(pivots_.begin(), pivots_.end(), col) - pivots_.begin();
    pivots_.insert(pivots_.begin() + at, col);
    rows_.insert(rows_.begin() + at, std::move(rem));
    return true;
  }

 private:
  RationalVector reduce(const RationalVector& v) const {
    if (v.size() != dim_)
      throw InvalidInput("vector of length " + std::to_string(v.size()) + " in a basis of dimension " +
                         std::to_string(dim_));
    RationalVector rem = v;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational c = rem[pivots_[i]];
      if (c == 0) continue;
      for (std::size_t j = pivots_[i]; j < dim_; ++j) rem[j] -= c * rows_[i][j];
    }
    return rem;
  }

  std::size_t dim_;
  std::vector<RationalVector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace bootperc
