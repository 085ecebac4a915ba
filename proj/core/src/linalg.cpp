#include "latidx/linalg.hpp"

#include <algorithm>
#include <charconv>
#include <utility>

namespace latidx {

namespace {

Integer abs_of(const Integer& z) { return abs(z); }

// Smith reduction with optional tracking of the unimodular transforms.
// `a` is reduced in place; u (rows) and v (cols) are updated when non-null.
void smith_reduce(IntMatrix& a, IntMatrix* u, IntMatrix* v) {
  const std::size_t r = a.rows();
  const std::size_t c = a.cols();
  const std::size_t diag = std::min(r, c);

  auto row_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
    // row dst -= q * row src
    for (std::size_t j = 0; j < c; ++j)
      if (sgn(a(src, j)) != 0) a(dst, j) -= q * a(src, j);
    if (u)
      for (std::size_t j = 0; j < r; ++j)
        if (sgn((*u)(src, j)) != 0) (*u)(dst, j) -= q * (*u)(src, j);
  };
  auto col_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t i = 0; i < r; ++i)
      if (sgn(a(i, src)) != 0) a(i, dst) -= q * a(i, src);
    if (v)
      for (std::size_t i = 0; i < c; ++i)
        if (sgn((*v)(i, src)) != 0) (*v)(i, dst) -= q * (*v)(i, src);
  };
  auto swap_r = [&](std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    if (u) u->swap_rows(x, y);
  };
  auto swap_c = [&](std::size_t x, std::size_t y) {
    a.swap_cols(x, y);
    if (v) v->swap_cols(x, y);
  };

  for (std::size_t t = 0; t < diag; ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    std::size_t pi = r, pj = c;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j)
        if (sgn(a(i, j)) != 0 && (pi == r || cmpabs(a(i, j), a(pi, pj)) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi == r) break;
    swap_r(t, pi);
    swap_c(t, pj);

    for (;;) {
      bool clean = true;
      Integer q;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (sgn(a(i, t)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        if (sgn(q) != 0) row_axpy(i, t, q);
        if (sgn(a(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (sgn(a(t, j)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        if (sgn(q) != 0) col_axpy(j, t, q);
        if (sgn(a(t, j)) != 0) clean = false;
      }
      if (!clean) {
        // remainders are smaller than the pivot; promote the smallest
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < r; ++i)
          if (sgn(a(i, t)) != 0 && cmpabs(a(i, t), a(bi, bj)) < 0) bi = i, bj = t;
        for (std::size_t j = t + 1; j < c; ++j)
          if (sgn(a(t, j)) != 0 && cmpabs(a(t, j), a(bi, bj)) < 0) bi = t, bj = j;
        swap_r(t, bi);
        swap_c(t, bj);
        continue;
      }
      // divisibility of the trailing block by the pivot
      std::size_t bad = r;
      for (std::size_t i = t + 1; i < r && bad == r; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == r) break;
      row_axpy(t, bad, Integer(-1));
    }
    if (sgn(a(t, t)) < 0) {
      for (std::size_t j = 0; j < c; ++j) a(t, j) = -a(t, j);
      if (u)
        for (std::size_t j = 0; j < r; ++j) (*u)(t, j) = -(*u)(t, j);
    }
  }
}

}  // namespace

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  RatMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

// ---------------------------------------------------------------------------
// AbelianType

AbelianType AbelianType::from_invariant_factors(std::vector<Integer> ascending) {
  for (std::size_t i = 0; i < ascending.size(); ++i) {
    if (ascending[i] < 2) throw ValidationError("invariant factors must be >= 2");
    if (i + 1 < ascending.size() &&
        !mpz_divisible_p(ascending[i + 1].get_mpz_t(), ascending[i].get_mpz_t()))
      throw ValidationError("invariant factors must divide each other in order");
  }
  AbelianType t;
  t.factors_ = std::move(ascending);
  return t;
}

AbelianType AbelianType::from_diagonal(std::vector<Integer> diagonal) {
  std::vector<Integer> d;
  for (auto& x : diagonal) {
    Integer y = abs_of(x);
    if (y > 1) d.push_back(std::move(y));
  }
  // (a, b) -> (gcd, lcm) over all pairs leaves a divisibility chain
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      Integer g = gcd(d[i], d[j]);
      Integer l = lcm(d[i], d[j]);
      d[i] = g;
      d[j] = l;
    }
  std::erase_if(d, [](const Integer& x) { return x == 1; });
  AbelianType t;
  t.factors_ = std::move(d);
  return t;
}

AbelianType AbelianType::cyclic(const Integer& order) {
  return from_diagonal({order});
}

AbelianType AbelianType::parse(std::string_view text) {
  if (text == "1") return {};
  std::vector<Integer> desc;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t dot = text.find('.', pos);
    if (dot == std::string_view::npos) dot = text.size();
    std::string_view part = text.substr(pos, dot - pos);
    if (part.empty() || !std::all_of(part.begin(), part.end(), [](char ch) {
          return ch >= '0' && ch <= '9';
        }))
      throw ValidationError("malformed group type '" + std::string(text) + "'");
    desc.emplace_back(std::string(part));
    pos = dot + 1;
  }
  std::reverse(desc.begin(), desc.end());
  return from_invariant_factors(std::move(desc));
}

Integer AbelianType::order() const {
  Integer o = 1;
  for (const auto& f : factors_) o *= f;
  return o;
}

Integer AbelianType::exponent() const {
  return factors_.empty() ? Integer(1) : factors_.back();
}

bool AbelianType::elementary(unsigned long p) const {
  return !factors_.empty() &&
         std::all_of(factors_.begin(), factors_.end(), [p](const Integer& f) { return f == p; });
}

std::string AbelianType::to_string() const {
  if (factors_.empty()) return "1";
  std::string out;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    if (!out.empty()) out += '.';
    out += it->get_str();
  }
  return out;
}

std::strong_ordering operator<=>(const AbelianType& a, const AbelianType& b) {
  int c = cmp(a.order(), b.order());
  if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  return a.to_string() <=> b.to_string();
}

// ---------------------------------------------------------------------------

Integer det_exact(const IntMatrix& m) {
  if (!m.square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  int sign = 1;
  Integer prev = 1;
  Integer t;
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t r = k + 1;
      while (r < n && sgn(a(r, k)) == 0) ++r;
      if (r == n) return 0;
      a.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix hnf(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t r = a.rows();
  const std::size_t c = a.cols();
  std::size_t p = 0;
  Integer q;
  for (std::size_t col = 0; col < c && p < r; ++col) {
    bool found = false;
    for (;;) {
      std::size_t best = r;
      for (std::size_t i = p; i < r; ++i)
        if (sgn(a(i, col)) != 0 && (best == r || cmpabs(a(i, col), a(best, col)) < 0)) best = i;
      if (best == r) break;
      found = true;
      a.swap_rows(p, best);
      bool done = true;
      for (std::size_t i = p + 1; i < r; ++i) {
        if (sgn(a(i, col)) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a(i, col).get_mpz_t(), a(p, col).get_mpz_t());
        for (std::size_t j = col; j < c; ++j) a(i, j) -= q * a(p, j);
        if (sgn(a(i, col)) != 0) done = false;
      }
      if (done) break;
    }
    if (!found) continue;
    if (sgn(a(p, col)) < 0)
      for (std::size_t j = col; j < c; ++j) a(p, j) = -a(p, j);
    for (std::size_t i = 0; i < p; ++i) {
      mpz_fdiv_q(q.get_mpz_t(), a(i, col).get_mpz_t(), a(p, col).get_mpz_t());
      if (sgn(q) == 0) continue;
      for (std::size_t j = col; j < c; ++j) a(i, j) -= q * a(p, j);
    }
    ++p;
  }
  IntMatrix out(p, c);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < c; ++j) out(i, j) = a(i, j);
  return out;
}

SmithForm smith_form(const IntMatrix& m) {
  SmithForm f{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
  smith_reduce(f.diagonal, &f.left, &f.right);
  return f;
}

AbelianType snf_invariant_factors(const IntMatrix& m) {
  IntMatrix a = m;
  smith_reduce(a, nullptr, nullptr);
  std::vector<Integer> diag;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) diag.push_back(a(i, i));
  return AbelianType::from_diagonal(std::move(diag));
}

std::size_t rank_rational(const RatMatrix& m) {
  RatMatrix a = m;
  const std::size_t r = a.rows();
  const std::size_t c = a.cols();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < c && rank < r; ++col) {
    std::size_t piv = rank;
    while (piv < r && sgn(a(piv, col)) == 0) ++piv;
    if (piv == r) continue;
    a.swap_rows(rank, piv);
    for (std::size_t i = rank + 1; i < r; ++i) {
      if (sgn(a(i, col)) == 0) continue;
      Rational f = a(i, col) / a(rank, col);
      for (std::size_t j = col; j < c; ++j) a(i, j) -= f * a(rank, j);
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_integer(const IntMatrix& m) { return hnf(m).rows(); }

RatMatrix inverse(const RatMatrix& m) {
  if (!m.square()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(a(piv, col)) == 0) ++piv;
    if (piv == n) throw NotABasis();
    a.swap_rows(col, piv);
    inv.swap_rows(col, piv);
    Rational p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || sgn(a(i, col)) == 0) continue;
      Rational f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

IntMatrix adjugate(const IntMatrix& m) {
  if (!m.square()) throw DimensionError("adjugate of a non-square matrix");
  const std::size_t n = m.rows();
  IntMatrix adj(n, n);
  Integer d = det_exact(m);
  if (sgn(d) != 0) {
    RatMatrix inv = inverse(to_rational(m));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational v = inv(i, j) * d;
        adj(i, j) = v.get_num();
      }
    return adj;
  }
  // singular: cofactors, adj(i, j) = (-1)^(i+j) * minor(j, i)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (std::size_t a = 0, ra = 0; a < n; ++a) {
        if (a == j) continue;
        for (std::size_t b = 0, cb = 0; b < n; ++b) {
          if (b == i) continue;
          minor(ra, cb++) = m(a, b);
        }
        ++ra;
      }
      Integer c = det_exact(minor);
      adj(i, j) = ((i + j) % 2 == 0) ? c : Integer(-c);
    }
  return adj;
}

Integer lcm_of_denominators(std::span<const Rational> values) {
  Integer l = 1;
  for (const auto& v : values) l = lcm(l, v.get_den());
  return l;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

}  // namespace latidx
