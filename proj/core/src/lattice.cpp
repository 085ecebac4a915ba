#include "latidx/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace latidx {

Rational GramMatrix::norm(std::span<const Integer> x) const {
  if (x.size() != dim()) throw DimensionError("vector length does not match Gram dimension");
  Rational acc = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (sgn(x[i]) == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < dim(); ++j)
      if (sgn(x[j]) != 0) row += g_(i, j) * x[j];
    acc += row * x[i];
  }
  return acc;
}

Rational GramMatrix::norm(std::span<const Rational> x) const { return inner(x, x); }

Rational GramMatrix::inner(std::span<const Rational> x, std::span<const Rational> y) const {
  if (x.size() != dim() || y.size() != dim())
    throw DimensionError("vector length does not match Gram dimension");
  Rational acc = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (sgn(x[i]) == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < dim(); ++j)
      if (sgn(y[j]) != 0) row += g_(i, j) * y[j];
    acc += row * x[i];
  }
  return acc;
}

GramMatrix GramMatrix::change_basis(const RatMatrix& basis) const {
  if (!basis.square() || basis.rows() != dim())
    throw DimensionError("basis change must be a square matrix of the lattice dimension");
  if (rank_rational(basis) != dim()) throw NotABasis();
  return make_gram(basis * g_ * basis.transposed());
}

GramMatrix GramMatrix::change_basis(const IntMatrix& basis) const {
  return change_basis(to_rational(basis));
}

GramMatrix GramMatrix::scaled(const Rational& by) const {
  Rational factor = by;  // callers may hand in e.g. Rational(6, 42) unreduced
  factor.canonicalize();
  if (sgn(factor) <= 0) throw ValidationError("scale factor must be positive");
  RatMatrix g = g_;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) g(i, j) *= factor;
  return GramMatrix(std::move(g));
}

GramMatrix make_gram(RatMatrix entries) {
  if (!entries.square()) throw DimensionError("Gram matrix must be square");
  const std::size_t n = entries.rows();
  if (n == 0) throw DimensionError("Gram matrix must have dimension >= 1");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) entries(i, j).canonicalize();
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (entries(i, j) != entries(j, i))
        throw GramError(GramError::Kind::NotSymmetric, i, j, 0,
                        "matrix is not symmetric: entry (" + std::to_string(i + 1) + "," +
                            std::to_string(j + 1) + ") = " + to_string(entries(i, j)) +
                            " but (" + std::to_string(j + 1) + "," + std::to_string(i + 1) +
                            ") = " + to_string(entries(j, i)));

  // Bareiss without pivoting on the integral multiple: its k-th pivot is the
  // k-th leading principal minor (of the scaled matrix).
  Integer l = lcm_of_denominators(entries.data());
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational v = entries(i, j) * l;
      a(i, j) = v.get_num();
    }
  Integer prev = 1;
  Integer t;
  Rational l_pow = 1;
  for (std::size_t k = 0; k < n; ++k) {
    l_pow *= l;
    if (sgn(a(k, k)) <= 0) {
      Rational minor = Rational(a(k, k)) / l_pow;
      minor.canonicalize();
      throw GramError(GramError::Kind::NotPositiveDefinite, k, k, minor,
                      "matrix is not positive definite: leading principal minor " +
                          std::to_string(k + 1) + " is " + to_string(minor));
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return GramMatrix(std::move(entries));
}

GramMatrix make_gram(const IntMatrix& entries) { return make_gram(to_rational(entries)); }

IntegralScaling scale_to_integral(const GramMatrix& g) {
  const RatMatrix& e = g.entries();
  Integer l = lcm_of_denominators(e.data());
  Integer content = 0;
  for (const auto& v : e.data()) {
    Rational w = v * l;
    content = gcd(content, w.get_num());
  }
  Rational scalar(l, content);
  scalar.canonicalize();
  return {g.scaled(scalar), scalar};
}

namespace {

// Pairwise (Lagrange-style) reduction of an integral Gram matrix:
// b_i -= q b_j whenever that shortens b_i, then sort by norm. Returns the
// reduced Gram and fills `u` with the new basis (rows, old coordinates).
IntMatrix pairwise_reduce(IntMatrix a, IntMatrix& u) {
  const std::size_t n = a.rows();
  u = IntMatrix::identity(n);
  Integer q, twice;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        twice = 2 * abs(a(i, j));
        if (twice <= a(j, j)) continue;
        // nearest integer to a(i,j) / a(j,j)
        Integer num = 2 * a(i, j) + a(j, j);
        Integer den = 2 * a(j, j);
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (sgn(q) == 0) continue;
        for (std::size_t k = 0; k < n; ++k) a(i, k) -= q * a(j, k);
        for (std::size_t k = 0; k < n; ++k) a(k, i) -= q * a(k, j);
        for (std::size_t k = 0; k < n; ++k) u(i, k) -= q * u(j, k);
        changed = true;
      }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  IntMatrix sorted(n, n), su(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      sorted(i, j) = a(order[i], order[j]);
      su(i, j) = u(order[i], j);
    }
  u = std::move(su);
  return sorted;
}

// Exact Fincke-Pohst over Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2.
class ShortVectorSearch {
 public:
  explicit ShortVectorSearch(const IntMatrix& a) : n_(a.rows()), q_(n_, n_), x_(n_), partial_(n_ + 1) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) q_(i, j) = a(i, j);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        q_(j, i) = q_(i, j);
        q_(i, j) /= q_(i, i);
      }
      for (std::size_t k = i + 1; k < n_; ++k)
        for (std::size_t l = k; l < n_; ++l) q_(k, l) -= q_(k, i) * q_(i, l);
    }
    best_ = a(0, 0);
    for (std::size_t i = 1; i < n_; ++i) best_ = std::min(best_, Rational(a(i, i)));
  }

  void run() {
    partial_[n_] = 0;
    descend(n_ - 1, true);
  }

  const Rational& minimum() const { return best_; }
  const std::vector<std::vector<Integer>>& found() const { return found_; }

 private:
  static bool fits(const Integer& t, const Rational& c, const Rational& r) {
    Rational d = t + c;
    return d * d <= r;
  }

  void descend(std::size_t i, bool higher_all_zero) {
    Rational c = 0;
    for (std::size_t j = i + 1; j < n_; ++j)
      if (sgn(x_[j]) != 0) c += q_(i, j) * x_[j];
    Rational r = (best_ - partial_[i + 1]) / q_(i, i);
    if (sgn(r) < 0) return;

    // integer t with (t + c)^2 <= r form an interval around -c
    double centre = -c.get_d();
    double radius = std::sqrt(std::max(0.0, r.get_d()));
    Integer lo(std::floor(centre - radius));
    Integer hi(std::ceil(centre + radius));
    while (fits(lo - 1, c, r)) --lo;
    while (lo <= hi && !fits(lo, c, r)) ++lo;
    while (fits(hi + 1, c, r)) ++hi;
    while (hi >= lo && !fits(hi, c, r)) --hi;
    if (higher_all_zero && lo < 0) lo = 0;

    for (Integer t = lo; t <= hi; ++t) {
      // the bound may have shrunk since the interval was computed
      r = (best_ - partial_[i + 1]) / q_(i, i);
      if (!fits(t, c, r)) {
        if (t + c > 0) break;
        continue;
      }
      x_[i] = t;
      Rational d = t + c;
      partial_[i] = partial_[i + 1] + q_(i, i) * d * d;
      bool all_zero = higher_all_zero && sgn(t) == 0;
      if (i == 0) {
        if (all_zero) continue;
        if (partial_[0] < best_) {
          best_ = partial_[0];
          found_.clear();
        }
        found_.push_back(x_);
      } else {
        descend(i - 1, all_zero);
      }
    }
    x_[i] = 0;
  }

  std::size_t n_;
  RatMatrix q_;
  std::vector<Integer> x_;
  std::vector<Rational> partial_;
  Rational best_;
  std::vector<std::vector<Integer>> found_;
};

}  // namespace

MinimalVectorSet minimal_vectors(const GramMatrix& g) {
  const std::size_t n = g.dim();
  IntegralScaling scaled = scale_to_integral(g);
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = scaled.gram(i, j).get_num();

  IntMatrix u;
  IntMatrix reduced = pairwise_reduce(std::move(a), u);
  ShortVectorSearch search(reduced);
  search.run();

  std::vector<std::vector<Integer>> vecs;
  vecs.reserve(search.found().size());
  for (const auto& x : search.found()) {
    std::vector<Integer> v(n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(x[k]) != 0) v[j] += x[k] * u(k, j);
    auto first = std::find_if(v.begin(), v.end(), [](const Integer& z) { return sgn(z) != 0; });
    if (first != v.end() && sgn(*first) < 0)
      for (auto& z : v) z = -z;
    vecs.push_back(std::move(v));
  }
  std::sort(vecs.begin(), vecs.end());

  MinimalVectorSet out;
  out.dim = n;
  out.minimum = search.minimum() / scaled.scalar;
  out.minimum.canonicalize();
  out.vectors = IntMatrix(0, n);
  for (const auto& v : vecs) {
    if (g.norm(v) != out.minimum)
      throw std::logic_error("minimal vector failed exact norm verification");
    out.vectors.append_row(v);
  }
  return out;
}

bool is_well_rounded(const MinimalVectorSet& mv) {
  return mv.s() >= mv.dim && rank_integer(mv.vectors) == mv.dim;
}

bool is_well_rounded(const GramMatrix& g) { return is_well_rounded(minimal_vectors(g)); }

}  // namespace latidx
