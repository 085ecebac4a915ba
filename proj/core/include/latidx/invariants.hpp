#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "latidx/index_engine.hpp"
#include "latidx/lattice.hpp"

namespace latidx {

// Rank of { x x^T : x minimal } inside the n(n+1)/2-dimensional space of
// symmetric matrices. Perfect lattices reach n(n+1)/2.
std::size_t perfection_rank(const GramMatrix& g);
std::size_t perfection_rank(const MinimalVectorSet& mv);

// Code over Z/dZ attached to a sublattice basis B of finite index:
// coordinates on B, scaled by the exponent d, of lifts of generators of the
// quotient. Index 1 gives d = 1 and no generators.
struct QuotientCode {
  Integer d = 1;
  std::size_t length = 0;
  std::vector<std::vector<Integer>> generators;  // entries in [0, d)
  std::size_t support_size = 0;

  static std::size_t weight(std::span<const Integer> word);
};

QuotientCode quotient_code(const MinimalVectorSet& mv, std::span<const std::size_t> subset);
QuotientCode quotient_code(const GramMatrix& g, std::span<const std::size_t> subset);
// basis rows = coordinates (in the lattice basis) of the sublattice basis.
QuotientCode quotient_code(const IntMatrix& basis);

// Both sides of
//   (sum|a_i| - 2d) N(e) = sum |a_i| (N(e - sgn(a_i) e_i) - N(e_i))
// for e = (sum a_i e_i) / d over the sublattice basis (e_i).
struct WatsonCertificate {
  Integer d;
  std::vector<Integer> a;
  Rational lhs;
  Rational rhs;
  bool balanced = false;  // all a_i > 0 and sum a_i = 2d
  // Balanced case only: the 0-based i with e - e_i minimal in <Lambda', e>.
  std::vector<std::size_t> minimal_shifts;
};

// Throws ValidationError unless gcd(a_1, ..., a_n, d) = 1 and d >= 2;
// std::logic_error if the two sides ever disagree.
WatsonCertificate watson_check(const GramMatrix& base, std::span<const Integer> a, const Integer& d);

struct CoefficientBoundReport {
  bool holds = true;
  std::uint64_t d = 0;               // the maximal index
  std::uint64_t bases_checked = 0;
  bool sampled = false;              // true when the basis list was sampled
  Rational max_abs_coefficient = 0;  // largest |a_i| seen
};

// For each minimal-vector basis B (all of them when binom(s, n) is at most
// 4 * sample_cap, otherwise sample_cap bases drawn by a fixed-seed generator)
// and every minimal vector x written as x = (sum a_i b_i) / k with
// k = [Lambda : <B>], checks |a_i| <= d, d = report.max_index. For the bases
// of index d this is the usual statement with denominator d; for smaller k
// it is what the same argument gives (the highest root of D4 on a basis of
// simple roots has a coefficient 2 = d, so denominator d would not do).
CoefficientBoundReport coefficient_bound_report(const MinimalVectorSet& mv,
                                                const IndexSystemReport& report,
                                                std::uint64_t sample_cap = 1'000'000);

}  // namespace latidx
