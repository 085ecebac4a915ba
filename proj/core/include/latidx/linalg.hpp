#pragma once

// Exact integer and rational matrix kernel.
//
// Everything here is exact: GMP integers and rationals, fraction-free
// elimination, no floating point anywhere.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "latidx/errors.hpp"

namespace latidx {

using Integer = mpz_class;
using Rational = mpq_class;

inline int cmpabs(const Integer& a, const Integer& b) {
  return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

// Dense row-major matrix. IntMatrix / RatMatrix are the two instantiations
// the library uses; RatMatrix entries are kept canonical (lowest terms,
// positive denominator) by every routine that produces them.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionError("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  void append_row(std::span<const T> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    if (values.size() != cols_) throw DimensionError("appended row has wrong length");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix to_rational(const IntMatrix& m);

// Isomorphism class of a finite abelian group, stored as its invariant
// factors d1 | d2 | ... | dk with every di >= 2 (ascending). The trivial
// group has no factors. Rendered descending with '.' separators: "4.2",
// "2.2.2", and "1" for the trivial group.
class AbelianType {
 public:
  AbelianType() = default;

  // Throws ValidationError unless the list is ascending, divisibility-ordered
  // and every entry is >= 2.
  static AbelianType from_invariant_factors(std::vector<Integer> ascending);

  // Any list of non-negative diagonal entries of a relation matrix. Zeros
  // (free parts) and ones are dropped; the rest is normalised.
  static AbelianType from_diagonal(std::vector<Integer> diagonal);

  static AbelianType cyclic(const Integer& order);

  // Inverse of to_string(). Accepts "1", "4", "4.2", "2.2.2", ...
  static AbelianType parse(std::string_view text);

  const std::vector<Integer>& invariant_factors() const { return factors_; }
  Integer order() const;
  Integer exponent() const;
  std::size_t rank() const { return factors_.size(); }
  bool trivial() const { return factors_.empty(); }
  bool cyclic() const { return factors_.size() <= 1; }
  // (Z/pZ)^k for some k >= 1.
  bool elementary(unsigned long p) const;

  std::string to_string() const;

  friend bool operator==(const AbelianType&, const AbelianType&) = default;
  // Order first, then the canonical string.
  friend std::strong_ordering operator<=>(const AbelianType& a, const AbelianType& b);

 private:
  std::vector<Integer> factors_;
};

// Fraction-free (Bareiss) determinant.
Integer det_exact(const IntMatrix& m);

// Row-style Hermite normal form of the row span. Zero rows removed, pivots
// positive, entries above each pivot reduced into [0, pivot).
IntMatrix hnf(const IntMatrix& m);

// U * m * V = D with U, V unimodular and D diagonal (rectangular shape of m)
// with d1 | d2 | ... on the diagonal, all non-negative.
struct SmithForm {
  IntMatrix left;      // U
  IntMatrix diagonal;  // D
  IntMatrix right;     // V
};
SmithForm smith_form(const IntMatrix& m);

// Torsion part of Z^cols / rowspan(m).
AbelianType snf_invariant_factors(const IntMatrix& m);

std::size_t rank_rational(const RatMatrix& m);
std::size_t rank_integer(const IntMatrix& m);

// Exact inverse; throws NotABasis when singular.
RatMatrix inverse(const RatMatrix& m);

// adj(m) with m * adj(m) = det(m) * I.
IntMatrix adjugate(const IntMatrix& m);

Integer lcm_of_denominators(std::span<const Rational> values);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

}  // namespace latidx
