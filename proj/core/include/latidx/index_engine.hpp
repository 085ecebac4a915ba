#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>

#include "latidx/lattice.hpp"
#include "latidx/linalg.hpp"

namespace latidx {

// Default cap on binom(s, n), the number of n-subsets of minimal vectors an
// index-system computation may account for.
inline constexpr std::uint64_t kDefaultBudget = 20'000'000'000ULL;

struct EngineOptions {
  bool want_counts = true;
  unsigned threads = 0;  // 0: default_thread_count()
  std::uint64_t budget = kDefaultBudget;
};

// LATIDX_THREADS if set and positive, else the hardware concurrency.
unsigned default_thread_count();

struct IndexSystemReport {
  std::size_t n = 0;
  std::size_t s = 0;
  Rational minimum;
  std::set<AbelianType> system;
  std::map<AbelianType, std::uint64_t> counts;  // empty unless requested
  std::uint64_t max_index = 0;
  std::uint64_t bases_full_rank = 0;
  std::uint64_t subsets_examined = 0;  // binom(s, n)

  bool contains(const AbelianType& t) const { return system.count(t) != 0; }
};

Integer binomial(std::uint64_t s, std::uint64_t k);

// Quotients Lambda / Lambda' over every n-subset of minimal vectors with
// nonzero determinant. Throws NotWellRounded or BudgetExceeded.
IndexSystemReport index_system(const GramMatrix& g, const EngineOptions& options = {});
IndexSystemReport index_system(const MinimalVectorSet& mv, const EngineOptions& options = {});

// Largest index only. Stops early once the Hermite bound is reached (n <= 8),
// which cannot be exceeded.
std::uint64_t max_index_only(const GramMatrix& g, const EngineOptions& options = {});
std::uint64_t max_index_only(const MinimalVectorSet& mv, const EngineOptions& options = {});

struct Quotient {
  Integer index;
  AbelianType type;
};

// Quotient by the sublattice spanned by the chosen minimal vectors (indices
// into mv.vectors). Throws NotABasis for a degenerate subset.
Quotient quotient_of(const MinimalVectorSet& mv, std::span<const std::size_t> subset);
Quotient quotient_of(const GramMatrix& g, std::span<const std::size_t> subset);
// Same for an explicit n x n coordinate matrix (rows = sublattice basis).
Quotient quotient_of(const IntMatrix& basis);

// floor(gamma_n^(n/2)) for n = 1..8: 1 1 1 2 2 4 8 16. Throws Unsupported
// beyond dimension 8.
std::uint64_t hermite_index_bound(std::size_t n);
bool hermite_bound_check(const IndexSystemReport& report);

}  // namespace latidx
