#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "latidx/linalg.hpp"

namespace latidx {

// Symmetric positive-definite rational matrix; defines a lattice up to
// isometry (and, for everything this library computes, up to similarity).
// Only make_gram() and the structure-preserving transforms below create one.
class GramMatrix {
 public:
  std::size_t dim() const { return g_.rows(); }
  const RatMatrix& entries() const { return g_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return g_(i, j); }

  Rational norm(std::span<const Integer> x) const;
  Rational norm(std::span<const Rational> x) const;
  Rational inner(std::span<const Rational> x, std::span<const Rational> y) const;

  // Gram of the basis whose rows (coordinates in the current basis) are
  // the rows of `basis`: basis * G * basis^T. `basis` must be square and
  // non-singular.
  GramMatrix change_basis(const RatMatrix& basis) const;
  GramMatrix change_basis(const IntMatrix& basis) const;
  GramMatrix scaled(const Rational& factor) const;

  friend bool operator==(const GramMatrix&, const GramMatrix&) = default;

 private:
  friend GramMatrix make_gram(RatMatrix);
  explicit GramMatrix(RatMatrix g) : g_(std::move(g)) {}
  RatMatrix g_;
};

// Throws DimensionError for non-square input and ValidationError for an
// asymmetric or non-positive-definite matrix. The positive-definiteness
// message names the first leading principal minor that is <= 0.
GramMatrix make_gram(RatMatrix entries);
GramMatrix make_gram(const IntMatrix& entries);

// Thrown by make_gram; carries which check failed so that front ends can
// point at the offending entry.
class GramError : public ValidationError {
 public:
  enum class Kind { NotSymmetric, NotPositiveDefinite };
  GramError(Kind kind, std::size_t row, std::size_t col, Rational minor, const std::string& what)
      : ValidationError(what), kind_(kind), row_(row), col_(col), minor_(std::move(minor)) {}
  Kind kind() const { return kind_; }
  // NotSymmetric: the entry (row, col) with row > col that disagrees with its
  // mirror. NotPositiveDefinite: row = col = k-1 for the failing minor k.
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }
  const Rational& minor() const { return minor_; }

 private:
  Kind kind_;
  std::size_t row_;
  std::size_t col_;
  Rational minor_;
};

struct IntegralScaling {
  GramMatrix gram;  // scalar * input, integral with entry gcd 1
  Rational scalar;
};
IntegralScaling scale_to_integral(const GramMatrix& g);

// All minimal vectors, one per +-pair, first nonzero coordinate positive,
// sorted lexicographically. Coordinates are w.r.t. the Gram basis.
struct MinimalVectorSet {
  std::size_t dim = 0;
  Rational minimum;
  IntMatrix vectors;  // s rows, dim columns

  std::size_t s() const { return vectors.rows(); }
};

MinimalVectorSet minimal_vectors(const GramMatrix& g);

bool is_well_rounded(const GramMatrix& g);
bool is_well_rounded(const MinimalVectorSet& mv);

}  // namespace latidx
