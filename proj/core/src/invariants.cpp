#include "latidx/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "latidx/catalog.hpp"

namespace latidx {

std::size_t perfection_rank(const MinimalVectorSet& mv) {
  const std::size_t n = mv.dim;
  RatMatrix rows(mv.s(), n * (n + 1) / 2);
  for (std::size_t r = 0; r < mv.s(); ++r) {
    auto x = mv.vectors.row(r);
    std::size_t col = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) rows(r, col++) = x[i] * x[j];
  }
  return rank_rational(rows);
}

std::size_t perfection_rank(const GramMatrix& g) { return perfection_rank(minimal_vectors(g)); }

std::size_t QuotientCode::weight(std::span<const Integer> word) {
  return static_cast<std::size_t>(
      std::count_if(word.begin(), word.end(), [](const Integer& z) { return sgn(z) != 0; }));
}

namespace {

void reduce_mod(std::vector<Integer>& word, const Integer& d) {
  for (auto& z : word) mpz_fdiv_r(z.get_mpz_t(), z.get_mpz_t(), d.get_mpz_t());
}

// Lexicographically smallest u * word (mod d) over units u.
std::vector<Integer> unit_normalize(const std::vector<Integer>& word, const Integer& d) {
  std::vector<Integer> best = word;
  for (Integer u = 2; u < d; ++u) {
    if (gcd(u, d) != 1) continue;
    std::vector<Integer> cand = word;
    for (auto& z : cand) z *= u;
    reduce_mod(cand, d);
    if (cand < best) best = std::move(cand);
  }
  return best;
}

}  // namespace

QuotientCode quotient_code(const IntMatrix& basis) {
  if (!basis.square()) throw DimensionError("a basis needs exactly n vectors of length n");
  const std::size_t n = basis.rows();
  if (sgn(det_exact(basis)) == 0) throw NotABasis();

  QuotientCode code;
  code.length = n;
  SmithForm f = smith_form(basis);
  code.d = f.diagonal(n - 1, n - 1);
  if (code.d == 1) return code;

  RatMatrix v_inv = inverse(to_rational(f.right));
  RatMatrix b_inv = inverse(to_rational(basis));
  for (std::size_t k = 0; k < n; ++k) {
    if (f.diagonal(k, k) < 2) continue;
    // lift of the k-th generator: row k of V^-1, then its coordinates on B
    std::vector<Integer> word(n);
    for (std::size_t j = 0; j < n; ++j) {
      Rational c = 0;
      for (std::size_t i = 0; i < n; ++i) c += v_inv(k, i) * b_inv(i, j);
      c *= code.d;
      c.canonicalize();
      if (c.get_den() != 1) throw std::logic_error("quotient generator has unexpected order");
      word[j] = c.get_num();
    }
    reduce_mod(word, code.d);
    code.generators.push_back(unit_normalize(word, code.d));
  }
  for (std::size_t j = 0; j < n; ++j)
    if (std::any_of(code.generators.begin(), code.generators.end(),
                    [j](const auto& w) { return sgn(w[j]) != 0; }))
      ++code.support_size;
  return code;
}

QuotientCode quotient_code(const MinimalVectorSet& mv, std::span<const std::size_t> subset) {
  if (subset.size() != mv.dim)
    throw DimensionError("subset must contain exactly n = " + std::to_string(mv.dim) + " indices");
  IntMatrix m(0, mv.dim);
  for (std::size_t idx : subset) {
    if (idx >= mv.s()) throw ValidationError("minimal-vector index out of range");
    m.append_row(mv.vectors.row(idx));
  }
  return quotient_code(m);
}

QuotientCode quotient_code(const GramMatrix& g, std::span<const std::size_t> subset) {
  return quotient_code(minimal_vectors(g), subset);
}

WatsonCertificate watson_check(const GramMatrix& base, std::span<const Integer> a, const Integer& d) {
  const std::size_t n = base.dim();
  if (a.size() != n) throw DimensionError("coefficient vector length must equal the dimension");
  if (d < 2) throw ValidationError("denominator d must be >= 2");
  Integer g = d;
  for (const auto& x : a) g = gcd(g, x);
  if (g != 1) throw ValidationError("gcd(a_1, ..., a_n, d) must be 1");

  WatsonCertificate cert;
  cert.d = d;
  cert.a.assign(a.begin(), a.end());

  std::vector<Rational> e(n);
  for (std::size_t i = 0; i < n; ++i) {
    e[i] = Rational(a[i], d);
    e[i].canonicalize();
  }
  const Rational norm_e = base.norm(e);
  Integer abs_sum = 0;
  for (const auto& x : a) abs_sum += abs(x);
  cert.lhs = (abs_sum - 2 * d) * norm_e;

  std::vector<Rational> shifted_norms(n);
  cert.rhs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a[i]) == 0) continue;
    std::vector<Rational> shifted = e;
    shifted[i] -= sgn(a[i]);
    shifted_norms[i] = base.norm(shifted);
    cert.rhs += abs(a[i]) * (shifted_norms[i] - base(i, i));
  }
  if (cert.lhs != cert.rhs)
    throw std::logic_error("self-test failure: the two sides of the norm identity differ");

  cert.balanced = abs_sum == 2 * d &&
                  std::all_of(a.begin(), a.end(), [](const Integer& x) { return sgn(x) > 0; });
  if (cert.balanced) {
    GlueSpec spec{base, {e}};
    GlueResult glued = glue(spec);
    const Rational mu = minimal_vectors(glued.gram).minimum;
    for (std::size_t i = 0; i < n; ++i)
      if (shifted_norms[i] == mu) cert.minimal_shifts.push_back(i);
  }
  return cert;
}

namespace {

// d' * B^-1 and d' = +-det(B) by fraction-free Gauss-Jordan, in __int128.
// Returns false when B is singular.
bool scaled_inverse(std::vector<__int128>& a, std::size_t n, std::vector<__int128>& out,
                    __int128& scale) {
  // a: n x n, out: n x n initialised to I by the caller
  __int128 prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv * n + k] == 0) ++piv;
    if (piv == n) return false;
    if (piv != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a[piv * n + j], a[k * n + j]);
        std::swap(out[piv * n + j], out[k * n + j]);
      }
    const __int128 p = a[k * n + k];
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const __int128 f = a[i * n + k];
      for (std::size_t j = 0; j < n; ++j) {
        a[i * n + j] = (p * a[i * n + j] - f * a[k * n + j]) / prev;
        out[i * n + j] = (p * out[i * n + j] - f * out[k * n + j]) / prev;
      }
    }
    prev = p;
  }
  // rows above the last pivot were scaled along the way; bring all to `prev`
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const __int128 di = a[i * n + i];
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = out[i * n + j] * prev / di;
  }
  scale = prev;
  return true;
}

}  // namespace

CoefficientBoundReport coefficient_bound_report(const MinimalVectorSet& mv,
                                                const IndexSystemReport& report,
                                                std::uint64_t sample_cap) {
  const std::size_t n = mv.dim;
  const std::size_t s = mv.s();
  CoefficientBoundReport out;
  out.d = report.max_index;
  if (s < n) return out;

  // __int128 is safe while products of two minors stay clear of 2^126
  Integer max_sq = 0;
  for (std::size_t x = 0; x < s; ++x) {
    Integer sq = 0;
    for (const auto& z : mv.vectors.row(x)) sq += z * z;
    max_sq = std::max(max_sq, sq);
  }
  const double minor_bits = 0.5 * static_cast<double>(n) * std::log2(max_sq.get_d());
  const bool small_entries = minor_bits < 50.0;

  Rational worst = 0;
  auto check_basis = [&](const std::vector<std::size_t>& idx) -> bool {
    if (small_entries) {
      std::vector<__int128> a(n * n), inv(n * n, 0);
      for (std::size_t r = 0; r < n; ++r) {
        inv[r * n + r] = 1;
        for (std::size_t j = 0; j < n; ++j) a[r * n + j] = mv.vectors(idx[r], j).get_si();
      }
      __int128 scale = 0;
      if (!scaled_inverse(a, n, inv, scale)) return false;
      __int128 peak = 0;
      for (std::size_t x = 0; x < s; ++x)
        for (std::size_t j = 0; j < n; ++j) {
          __int128 y = 0;
          for (std::size_t i = 0; i < n; ++i) y += mv.vectors(x, i).get_si() * inv[i * n + j];
          if (y < 0) y = -y;
          peak = std::max(peak, y);
        }
      // y = det(B) * (coordinates of x), which is already the numerator over the index
      const Rational worst_here(Integer(static_cast<long>(peak)));
      if (worst_here > worst) worst = worst_here;
      return true;
    }
    IntMatrix b(0, n);
    for (std::size_t r : idx) b.append_row(mv.vectors.row(r));
    const Integer index = abs(det_exact(b));
    if (sgn(index) == 0) return false;
    RatMatrix b_inv = inverse(to_rational(b));
    for (std::size_t x = 0; x < s; ++x)
      for (std::size_t j = 0; j < n; ++j) {
        Rational c = 0;
        for (std::size_t i = 0; i < n; ++i) c += mv.vectors(x, i) * b_inv(i, j);
        Rational aj = abs(c) * index;
        if (aj > worst) worst = aj;
      }
    return true;
  };

  const Integer total = binomial(s, n);
  if (total <= Integer(std::to_string(4 * sample_cap))) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      if (check_basis(idx)) ++out.bases_checked;
      std::size_t k = n;
      while (k > 0 && idx[k - 1] == s - n + (k - 1)) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
  } else {
    out.sampled = true;
    std::mt19937_64 rng(0x1a771ceULL);
    std::vector<std::size_t> pool(s);
    std::uint64_t attempts = 0;
    while (out.bases_checked < sample_cap && attempts < 64 * sample_cap) {
      ++attempts;
      std::iota(pool.begin(), pool.end(), 0);
      for (std::size_t k = 0; k < n; ++k) {
        std::uniform_int_distribution<std::size_t> pick(k, s - 1);
        std::swap(pool[k], pool[pick(rng)]);
      }
      std::vector<std::size_t> idx(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
      std::sort(idx.begin(), idx.end());
      if (check_basis(idx)) ++out.bases_checked;
    }
  }
  out.max_abs_coefficient = worst;
  out.holds = worst <= Rational(static_cast<unsigned long>(out.d));
  return out;
}

}  // namespace latidx
