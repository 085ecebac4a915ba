#include "latidx/index_engine.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace latidx {

unsigned default_thread_count() {
  if (const char* env = std::getenv("LATIDX_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

Integer binomial(std::uint64_t s, std::uint64_t k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), s, k);
  return out;
}

std::uint64_t hermite_index_bound(std::size_t n) {
  // gamma_n^n for n = 1..8
  static const std::array<std::pair<unsigned, unsigned>, 8> kGammaPow = {
      {{1, 1}, {4, 3}, {2, 1}, {4, 1}, {8, 1}, {64, 3}, {64, 1}, {256, 1}}};
  if (n == 0 || n > kGammaPow.size())
    throw Unsupported("Hermite constant table covers dimensions 1..8 only (got " +
                      std::to_string(n) + ")");
  auto [num, den] = kGammaPow[n - 1];
  std::uint64_t k = 0;
  while ((k + 1) * (k + 1) * den <= num) ++k;
  return k;
}

bool hermite_bound_check(const IndexSystemReport& report) {
  return report.max_index <= hermite_index_bound(report.n);
}

namespace {

// Plucker-coordinate bookkeeping. Level k holds the k x k minors of the
// first k chosen vectors, one per k-subset of columns. Appending a vector v
// gives level k+1 by Laplace expansion along the new (last) row:
//   W'[I] = sum_t (-1)^(k+t) v[I_t] W[I \ I_t].
// A prefix is linearly dependent iff its level is identically zero.
struct PluckerLayout {
  struct Term {
    std::uint32_t src;
    std::uint16_t col;
    std::int16_t sign;
  };

  explicit PluckerLayout(std::size_t n) : n(n), count(n + 1), index_of(std::size_t{1} << n, -1), terms(n) {
    std::vector<std::vector<std::uint32_t>> subsets(n + 1);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      auto k = static_cast<std::size_t>(std::popcount(mask));
      index_of[mask] = static_cast<std::int32_t>(subsets[k].size());
      subsets[k].push_back(mask);
    }
    for (std::size_t k = 0; k <= n; ++k) count[k] = subsets[k].size();
    for (std::size_t k = 0; k < n; ++k) {
      auto& out = terms[k];
      out.reserve(count[k + 1] * (k + 1));
      for (std::uint32_t target : subsets[k + 1]) {
        std::size_t t = 0;
        for (std::uint16_t col = 0; col < n; ++col) {
          if (!(target & (1u << col))) continue;
          std::uint32_t src = static_cast<std::uint32_t>(index_of[target & ~(1u << col)]);
          std::int16_t sign = ((k + t) % 2 == 0) ? 1 : -1;
          out.push_back({src, col, sign});
          ++t;
        }
      }
    }
  }

  std::size_t n;
  std::vector<std::size_t> count;
  std::vector<std::int32_t> index_of;
  std::vector<std::vector<Term>> terms;  // terms[k]: level k -> k+1
};

// D < kFastLimit with a type decidable from D and the 2-rank of the basis
// matrix are tallied in flat buckets; everything else goes through SNF.
constexpr std::size_t kFastLimit = 64;

enum class FastKind : std::uint8_t { Cyclic, NeedsTwoRank, Slow };

struct FastTable {
  std::array<FastKind, kFastLimit> kind{};
  FastTable() {
    for (std::size_t d = 1; d < kFastLimit; ++d) {
      std::size_t two = 0, odd = d;
      while (odd % 2 == 0) odd /= 2, ++two;
      bool odd_squarefree = true;
      for (std::size_t p = 3; p * p <= odd; p += 2)
        if (odd % (p * p) == 0) odd_squarefree = false;
      if (!odd_squarefree)
        kind[d] = FastKind::Slow;
      else if (two <= 1)
        kind[d] = FastKind::Cyclic;
      else if (two <= 3)
        kind[d] = FastKind::NeedsTwoRank;
      else
        kind[d] = FastKind::Slow;
    }
  }
};
const FastTable kFastTable;

// Type from |det| = 2^a * m (m odd squarefree, a <= 3) and the number of
// invariant factors divisible by 2.
AbelianType fast_type(std::size_t d, std::size_t even_factors) {
  if (kFastTable.kind[d] == FastKind::Cyclic) return AbelianType::cyclic(d);
  std::size_t a = 0, odd = d;
  while (odd % 2 == 0) odd /= 2, ++a;
  std::vector<std::size_t> two_parts;  // descending exponents
  if (a == 2 && even_factors == 1) two_parts = {2};
  else if (a == 2 && even_factors == 2) two_parts = {1, 1};
  else if (a == 3 && even_factors == 1) two_parts = {3};
  else if (a == 3 && even_factors == 2) two_parts = {2, 1};
  else if (a == 3 && even_factors == 3) two_parts = {1, 1, 1};
  else throw std::logic_error("inconsistent 2-rank for determinant " + std::to_string(d));
  std::vector<Integer> diag;
  for (std::size_t i = 0; i < two_parts.size(); ++i)
    diag.emplace_back(static_cast<unsigned long>((1ul << two_parts[i]) * (i == 0 ? odd : 1)));
  return AbelianType::from_diagonal(std::move(diag));
}

struct Tallies {
  std::uint64_t full_rank = 0;
  std::uint64_t max_index = 0;
  std::array<std::array<std::uint64_t, 4>, kFastLimit> fast{};  // [D][even factors], slot 0 = cyclic
  std::map<AbelianType, std::uint64_t> slow;

  void merge(const Tallies& o) {
    full_rank += o.full_rank;
    max_index = std::max(max_index, o.max_index);
    for (std::size_t d = 0; d < kFastLimit; ++d)
      for (std::size_t k = 0; k < 4; ++k) fast[d][k] += o.fast[d][k];
    for (const auto& [t, c] : o.slow) slow[t] += c;
  }
};

struct Problem {
  std::size_t n;
  std::size_t s;
  const IntMatrix* vectors;
  const PluckerLayout* layout;
  bool classify;
  std::uint64_t stop_at;  // max-index mode: stop once reached (0 = never)
  std::atomic<bool>* stop;
};

template <class Scalar>
bool is_zero(const Scalar& x) {
  if constexpr (std::is_same_v<Scalar, Integer>) return sgn(x) == 0;
  else return x == 0;
}

template <class Scalar>
std::uint64_t abs_u64(const Scalar& x) {
  if constexpr (std::is_same_v<Scalar, Integer>) {
    Integer a = abs(x);
    if (!a.fits_ulong_p()) throw std::overflow_error("index does not fit in 64 bits");
    return a.get_ui();
  } else {
    using U = std::conditional_t<std::is_same_v<Scalar, __int128>, unsigned __int128, std::uint64_t>;
    U a = x < 0 ? U(0) - U(x) : U(x);
    if (a > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("index does not fit in 64 bits");
    return static_cast<std::uint64_t>(a);
  }
}

template <class Scalar>
class Worker {
 public:
  explicit Worker(const Problem& p)
      : p_(p), n_(p.n), s_(p.s), v_(p.s * p.n), mod2_(p.s), w_(p.n), path_(p.n), c_(p.n) {
    for (std::size_t i = 0; i < s_; ++i) {
      std::uint64_t bits = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        const Integer& z = (*p.vectors)(i, j);
        if constexpr (std::is_same_v<Scalar, Integer>) v_[i * n_ + j] = z;
        else v_[i * n_ + j] = static_cast<Scalar>(z.get_si());
        if (mpz_odd_p(z.get_mpz_t())) bits |= std::uint64_t{1} << j;
      }
      mod2_[i] = bits;
    }
    for (std::size_t k = 0; k < n_; ++k) w_[k].assign(p.layout->count[k], Scalar(0));
    w_[0][0] = 1;
  }

  void run_all() { descend(0, 0); }

  void run_prefix(std::size_t i0, std::size_t i1) {
    if (!push(0, i0)) return;
    path_[0] = i0;
    if (!push(1, i1)) return;
    path_[1] = i1;
    descend(2, i1 + 1);
  }

  const Tallies& tallies() const { return t_; }

 private:
  bool push(std::size_t k, std::size_t i) {
    const auto& terms = p_.layout->terms[k];
    const Scalar* in = w_[k].data();
    Scalar* out = w_[k + 1].data();
    const Scalar* v = &v_[i * n_];
    const std::size_t per = k + 1;
    const std::size_t targets = p_.layout->count[k + 1];
    bool nonzero = false;
    const auto* t = terms.data();
    for (std::size_t a = 0; a < targets; ++a) {
      Scalar acc = 0;
      for (std::size_t b = 0; b < per; ++b, ++t) {
        const Scalar& x = v[t->col];
        if (is_zero(x)) continue;
        const Scalar& y = in[t->src];
        if (is_zero(y)) continue;
        if (t->sign > 0) acc += y * x;
        else acc -= y * x;
      }
      if (!is_zero(acc)) nonzero = true;
      out[a] = acc;
    }
    return nonzero;
  }

  void descend(std::size_t k, std::size_t start) {
    if (k + 1 == n_) {
      scan_leaves(start);
      return;
    }
    const std::size_t last = s_ - (n_ - k);
    for (std::size_t i = start; i <= last; ++i) {
      if (p_.stop->load(std::memory_order_relaxed)) return;
      if (!push(k, i)) continue;
      path_[k] = i;
      descend(k + 1, i + 1);
    }
  }

  // Prefix of n-1 vectors fixed: det(prefix; v) = c . v.
  void scan_leaves(std::size_t start) {
    const auto& layout = *p_.layout;
    const std::uint32_t full = (1u << n_) - 1;
    for (std::size_t j = 0; j < n_; ++j) {
      const Scalar& w = w_[n_ - 1][static_cast<std::size_t>(layout.index_of[full & ~(1u << j)])];
      c_[j] = ((n_ - 1 + j) % 2 == 0) ? w : Scalar(-w);
    }
    two_rank_ready_ = false;
    for (std::size_t i = start; i < s_; ++i) {
      const Scalar* v = &v_[i * n_];
      Scalar det = 0;
      for (std::size_t j = 0; j < n_; ++j)
        if (!is_zero(v[j])) det += c_[j] * v[j];
      if (is_zero(det)) continue;
      const std::uint64_t d = abs_u64(det);
      ++t_.full_rank;
      if (d > t_.max_index) {
        t_.max_index = d;
        if (p_.stop_at != 0 && d >= p_.stop_at) {
          p_.stop->store(true, std::memory_order_relaxed);
          return;
        }
      }
      if (p_.classify) classify(d, i);
    }
  }

  void classify(std::uint64_t d, std::size_t leaf) {
    if (d < kFastLimit) {
      switch (kFastTable.kind[d]) {
        case FastKind::Cyclic:
          ++t_.fast[d][0];
          return;
        case FastKind::NeedsTwoRank:
          ++t_.fast[d][n_ - two_rank_with(leaf)];
          return;
        case FastKind::Slow:
          break;
      }
    }
    IntMatrix m(n_, n_);
    for (std::size_t r = 0; r < n_; ++r) {
      std::size_t src = (r + 1 == n_) ? leaf : path_[r];
      for (std::size_t j = 0; j < n_; ++j) m(r, j) = (*p_.vectors)(src, j);
    }
    ++t_.slow[snf_invariant_factors(m)];
  }

  // GF(2) rank of the prefix plus the leaf vector.
  std::size_t two_rank_with(std::size_t leaf) {
    if (!two_rank_ready_) {
      basis_by_bit_.assign(n_, 0);
      prefix_two_rank_ = 0;
      for (std::size_t r = 0; r + 1 < n_; ++r)
        if (insert_mod2(mod2_[path_[r]], true)) ++prefix_two_rank_;
      two_rank_ready_ = true;
    }
    return prefix_two_rank_ + (insert_mod2(mod2_[leaf], false) ? 1 : 0);
  }

  bool insert_mod2(std::uint64_t x, bool keep) {
    while (x != 0) {
      auto bit = static_cast<std::size_t>(std::countr_zero(x));
      if (basis_by_bit_[bit] == 0) {
        if (keep) basis_by_bit_[bit] = x;
        return true;
      }
      x ^= basis_by_bit_[bit];
    }
    return false;
  }

  const Problem& p_;
  std::size_t n_;
  std::size_t s_;
  std::vector<Scalar> v_;
  std::vector<std::uint64_t> mod2_;
  std::vector<std::vector<Scalar>> w_;  // levels 0..n-1
  std::vector<std::size_t> path_;
  std::vector<Scalar> c_;
  std::vector<std::uint64_t> basis_by_bit_;
  std::size_t prefix_two_rank_ = 0;
  bool two_rank_ready_ = false;
  Tallies t_;
};

template <class Scalar>
Tallies enumerate(const Problem& p, unsigned threads) {
  if (threads <= 1 || p.n < 3) {
    Worker<Scalar> w(p);
    w.run_all();
    return w.tallies();
  }
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t i0 = 0; i0 + p.n <= p.s; ++i0)
    for (std::size_t i1 = i0 + 1; i1 + p.n - 1 <= p.s; ++i1) tasks.emplace_back(i0, i1);

  std::atomic<std::size_t> next{0};
  std::vector<Tallies> results(threads);
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        Worker<Scalar> w(p);
        for (;;) {
          std::size_t k = next.fetch_add(1);
          if (k >= tasks.size() || p.stop->load(std::memory_order_relaxed)) break;
          w.run_prefix(tasks[k].first, tasks[k].second);
        }
        results[t] = w.tallies();
      } catch (...) {
        errors[t] = std::current_exception();
        p.stop->store(true);
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  Tallies total;
  for (const auto& r : results) total.merge(r);
  return total;
}

enum class Arithmetic { Int64, Int128, Big };

// Hadamard-style bound on every minor and on the partial sums of the
// Laplace expansions, in bits.
Arithmetic choose_arithmetic(const IntMatrix& vectors, std::size_t n) {
  std::vector<double> norms;
  double vmax = 1;
  for (std::size_t i = 0; i < vectors.rows(); ++i) {
    double sq = 0;
    for (std::size_t j = 0; j < vectors.cols(); ++j) {
      double x = vectors(i, j).get_d();
      sq += x * x;
      vmax = std::max(vmax, std::fabs(x));
      if (!vectors(i, j).fits_slong_p()) return Arithmetic::Big;
    }
    norms.push_back(0.5 * std::log2(std::max(sq, 1.0)));
  }
  std::sort(norms.rbegin(), norms.rend());
  double bits = 0;
  for (std::size_t i = 0; i < std::min(n, norms.size()); ++i) bits += norms[i];
  bits += std::log2(vmax) + std::log2(static_cast<double>(n) + 1) + 2;
  if (bits < 62) return Arithmetic::Int64;
  if (bits < 125) return Arithmetic::Int128;
  return Arithmetic::Big;
}

Tallies run_engine(const MinimalVectorSet& mv, const EngineOptions& options, bool classify,
                   std::uint64_t stop_at) {
  const std::size_t n = mv.dim;
  if (!is_well_rounded(mv)) throw NotWellRounded();
  Integer total = binomial(mv.s(), n);
  if (total > Integer(std::to_string(options.budget)))
    throw BudgetExceeded("budget exceeded: binom(" + std::to_string(mv.s()) + "," +
                         std::to_string(n) + ") = " + total.get_str() +
                         " subsets of minimal vectors exceeds the budget of " +
                         std::to_string(options.budget));
  if (n > 24) throw Unsupported("index enumeration supports dimensions up to 24");

  PluckerLayout layout(n);
  std::atomic<bool> stop{false};
  Problem p{n, mv.s(), &mv.vectors, &layout, classify, stop_at, &stop};
  unsigned threads = options.threads == 0 ? default_thread_count() : options.threads;
  switch (choose_arithmetic(mv.vectors, n)) {
    case Arithmetic::Int64:
      return enumerate<std::int64_t>(p, threads);
    case Arithmetic::Int128:
      return enumerate<__int128>(p, threads);
    case Arithmetic::Big:
      break;
  }
  return enumerate<Integer>(p, threads);
}

}  // namespace

IndexSystemReport index_system(const MinimalVectorSet& mv, const EngineOptions& options) {
  Tallies t = run_engine(mv, options, true, 0);
  IndexSystemReport r;
  r.n = mv.dim;
  r.s = mv.s();
  r.minimum = mv.minimum;
  r.max_index = t.max_index;
  r.bases_full_rank = t.full_rank;
  r.subsets_examined = binomial(mv.s(), mv.dim).get_ui();

  std::map<AbelianType, std::uint64_t> counts = std::move(t.slow);
  for (std::size_t d = 1; d < kFastLimit; ++d)
    for (std::size_t k = 0; k < 4; ++k) {
      if (t.fast[d][k] == 0) continue;
      counts[fast_type(d, k)] += t.fast[d][k];
    }
  for (const auto& [type, c] : counts) r.system.insert(type);
  if (options.want_counts) r.counts = std::move(counts);
  return r;
}

IndexSystemReport index_system(const GramMatrix& g, const EngineOptions& options) {
  return index_system(minimal_vectors(g), options);
}

std::uint64_t max_index_only(const MinimalVectorSet& mv, const EngineOptions& options) {
  std::uint64_t stop_at = mv.dim <= 8 ? hermite_index_bound(mv.dim) : 0;
  return run_engine(mv, options, false, stop_at).max_index;
}

std::uint64_t max_index_only(const GramMatrix& g, const EngineOptions& options) {
  return max_index_only(minimal_vectors(g), options);
}

Quotient quotient_of(const IntMatrix& basis) {
  if (!basis.square()) throw DimensionError("a basis needs exactly n vectors of length n");
  Integer d = det_exact(basis);
  if (sgn(d) == 0) throw NotABasis();
  return {abs(d), snf_invariant_factors(basis)};
}

Quotient quotient_of(const MinimalVectorSet& mv, std::span<const std::size_t> subset) {
  if (subset.size() != mv.dim)
    throw DimensionError("subset must contain exactly n = " + std::to_string(mv.dim) + " indices");
  std::vector<std::size_t> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ValidationError("subset indices must be distinct");
  IntMatrix m(0, mv.dim);
  for (std::size_t idx : subset) {
    if (idx >= mv.s())
      throw ValidationError("minimal-vector index " + std::to_string(idx) + " out of range (s = " +
                            std::to_string(mv.s()) + ")");
    m.append_row(mv.vectors.row(idx));
  }
  return quotient_of(m);
}

Quotient quotient_of(const GramMatrix& g, std::span<const std::size_t> subset) {
  return quotient_of(minimal_vectors(g), subset);
}

}  // namespace latidx
