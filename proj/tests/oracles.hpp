#pragma once

// Slow, independent reference computations used only by the tests. None of
// them call the library routine they are checking.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "latidx/lattice.hpp"
#include "latidx/linalg.hpp"

namespace oracle {

using latidx::Integer;
using latidx::IntMatrix;
using latidx::Rational;

// Leibniz expansion.
inline Integer permutation_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  Integer total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inversions;
    Integer term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, p[i]);
    total += (inversions % 2) ? -term : term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// Z^n / rowspan(m) for a square non-singular m with |det| = D, realised as
// (Z/D)^n modulo the image H of the rows. Elements are encoded base D, so
// keep D^n small.
class FiniteQuotient {
 public:
  explicit FiniteQuotient(const IntMatrix& m) : n_(m.rows()) {
    d_ = Integer(abs(permutation_det(m))).get_ui();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n_; ++i) total *= d_;
    in_h_.assign(total, false);
    std::vector<std::vector<unsigned long>> gens;
    for (std::size_t i = 0; i < n_; ++i) {
      std::vector<unsigned long> g(n_);
      for (std::size_t j = 0; j < n_; ++j) {
        Integer r;
        mpz_fdiv_r_ui(r.get_mpz_t(), m(i, j).get_mpz_t(), d_);
        g[j] = r.get_ui();
      }
      gens.push_back(g);
    }
    // closure by BFS from 0
    std::vector<std::size_t> queue{0};
    in_h_[0] = true;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      auto x = decode(queue[q]);
      for (const auto& g : gens) {
        std::vector<unsigned long> y(n_);
        for (std::size_t j = 0; j < n_; ++j) y[j] = (x[j] + g[j]) % d_;
        std::size_t code = encode(y);
        if (!in_h_[code]) {
          in_h_[code] = true;
          queue.push_back(code);
        }
      }
    }
    h_size_ = queue.size();
  }

  std::size_t order() const { return in_h_.size() / h_size_; }

  // number of x in the quotient with k x = 0
  std::size_t torsion(unsigned long k) const {
    std::size_t count = 0;
    for (std::size_t c = 0; c < in_h_.size(); ++c) {
      auto x = decode(c);
      for (auto& v : x) v = (v * k) % d_;
      if (in_h_[encode(x)]) ++count;
    }
    return count / h_size_;
  }

  // Invariant factors recovered from |G[p^j]| for every prime power.
  std::vector<unsigned long> invariant_factors() const {
    const unsigned long ord = order();
    std::map<unsigned long, std::vector<unsigned>> exps;  // p -> exponents, descending
    unsigned long rest = ord;
    for (unsigned long p = 2; p <= rest; ++p) {
      if (rest % p) continue;
      while (rest % p == 0) rest /= p;
      // rank of p^j-torsion layers: r_j = log_p(|G[p^j]| / |G[p^(j-1)]|)
      std::vector<unsigned> layer_ranks;
      unsigned long pj = 1;
      std::size_t prev = 1;
      for (;;) {
        pj *= p;
        std::size_t t = torsion(pj);
        if (t == prev) break;
        unsigned r = 0;
        for (std::size_t q = t / prev; q > 1; q /= p) ++r;
        layer_ranks.push_back(r);
        prev = t;
      }
      // number of cyclic p-parts of exponent >= j is layer_ranks[j-1]
      std::vector<unsigned> e;
      for (std::size_t j = 0; j < layer_ranks.size(); ++j) {
        unsigned ge = layer_ranks[j];
        unsigned gt = j + 1 < layer_ranks.size() ? layer_ranks[j + 1] : 0;
        for (unsigned c = 0; c < ge - gt; ++c) e.push_back(static_cast<unsigned>(j + 1));
      }
      std::sort(e.rbegin(), e.rend());
      exps[p] = e;
    }
    std::size_t len = 0;
    for (const auto& [p, e] : exps) len = std::max(len, e.size());
    std::vector<unsigned long> f(len, 1);  // descending
    for (const auto& [p, e] : exps)
      for (std::size_t i = 0; i < e.size(); ++i)
        for (unsigned k = 0; k < e[i]; ++k) f[i] *= p;
    std::reverse(f.begin(), f.end());
    return f;  // ascending
  }

 private:
  std::vector<unsigned long> decode(std::size_t c) const {
    std::vector<unsigned long> x(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      x[j] = c % d_;
      c /= d_;
    }
    return x;
  }
  std::size_t encode(const std::vector<unsigned long>& x) const {
    std::size_t c = 0;
    for (std::size_t j = n_; j-- > 0;) c = c * d_ + x[j];
    return c;
  }

  std::size_t n_;
  unsigned long d_;
  std::vector<bool> in_h_;
  std::size_t h_size_ = 1;
};

// Exhaustive search in the box |x_i| <= sqrt(m * (G^-1)_ii), m the smallest
// diagonal entry; returns the minimum and the vectors with first nonzero
// coordinate positive, sorted.
struct BoxResult {
  Rational minimum;
  std::vector<std::vector<Integer>> vectors;
  bool complete = true;  // false: box larger than max_points, nothing searched
};

inline BoxResult box_minimal_vectors(const latidx::GramMatrix& g,
                                     double max_points = 1e300) {
  const std::size_t n = g.dim();
  Rational m = g(0, 0);
  for (std::size_t i = 1; i < n; ++i) m = std::min(m, g(i, i));
  latidx::RatMatrix inv = latidx::inverse(g.entries());
  std::vector<long> bound(n);
  for (std::size_t i = 0; i < n; ++i)
    bound[i] = static_cast<long>(std::floor(std::sqrt(Rational(m * inv(i, i)).get_d()) + 1e-9)) + 1;

  BoxResult best{m, {}};
  double volume = 1;
  for (long b : bound) volume *= static_cast<double>(2 * b + 1);
  if (volume > max_points) {
    best.complete = false;
    return best;
  }
  std::vector<long> x(n, 0);
  for (std::size_t i = 0; i < n; ++i) x[i] = -bound[i];
  for (;;) {
    bool nonzero = false, positive_lead = false;
    for (std::size_t i = 0; i < n; ++i)
      if (x[i] != 0) {
        nonzero = true;
        positive_lead = x[i] > 0;
        break;
      }
    if (nonzero && positive_lead) {
      std::vector<Integer> v(x.begin(), x.end());
      Rational nv = g.norm(v);
      if (nv < best.minimum) {
        best.minimum = nv;
        best.vectors.clear();
      }
      if (nv == best.minimum) best.vectors.push_back(v);
    }
    std::size_t k = 0;
    while (k < n && x[k] == bound[k]) {
      x[k] = -bound[k];
      ++k;
    }
    if (k == n) break;
    ++x[k];
  }
  std::sort(best.vectors.begin(), best.vectors.end());
  return best;
}

// Unpruned scan of every n-subset: determinant by Leibniz expansion (n <= 7)
// and quotient type from FiniteQuotient.
struct ScanResult {
  std::map<std::vector<unsigned long>, std::uint64_t> counts;  // ascending invariant factors
  std::uint64_t full_rank = 0;
};

inline ScanResult scan_all_subsets(const IntMatrix& vectors, std::size_t n) {
  ScanResult out;
  const std::size_t s = vectors.rows();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  if (s < n) return out;
  for (;;) {
    IntMatrix b(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) b(r, c) = vectors(idx[r], c);
    if (sgn(permutation_det(b)) != 0) {
      ++out.full_rank;
      ++out.counts[FiniteQuotient(b).invariant_factors()];
    }
    std::size_t k = n;
    while (k > 0 && idx[k - 1] == s - n + (k - 1)) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// D^n, the size of the ambient group FiniteQuotient walks through.
inline double quotient_work(const IntMatrix& m) {
  return std::pow(Integer(abs(permutation_det(m))).get_d(), static_cast<double>(m.rows()));
}

inline std::string factors_to_string(const std::vector<unsigned long>& ascending) {
  if (ascending.empty()) return "1";
  std::string s;
  for (auto it = ascending.rbegin(); it != ascending.rend(); ++it)
    s += (s.empty() ? "" : ".") + std::to_string(*it);
  return s;
}

// Hand-rolled generators.
inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

// Product of random elementary operations: unimodular with small entries.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 12) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    int c = coef(rng);
    for (std::size_t k = 0; k < n; ++k) u(i, k) += c * u(j, k);
    if (s % 5 == 4) u.swap_rows(i, j);
  }
  return u;
}

}  // namespace oracle
