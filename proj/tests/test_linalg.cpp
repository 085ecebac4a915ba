#include <gtest/gtest.h>

#include <random>

#include "latidx/linalg.hpp"
#include "oracles.hpp"

using namespace latidx;

namespace {

bool is_unimodular(const IntMatrix& u) { return abs(oracle::permutation_det(u)) == 1; }

// Same row lattice: each contains the other's rows, checked with exact
// rational solves.
bool same_row_lattice(const IntMatrix& a, const IntMatrix& b) {
  auto contained = [](const IntMatrix& small, const IntMatrix& big) {
    RatMatrix inv = inverse(to_rational(big));
    for (std::size_t i = 0; i < small.rows(); ++i)
      for (std::size_t j = 0; j < big.cols(); ++j) {
        Rational c = 0;
        for (std::size_t k = 0; k < big.rows(); ++k) c += Rational(small(i, k)) * inv(k, j);
        if (c.get_den() != 1) return false;
      }
    return true;
  };
  return contained(a, b) && contained(b, a);
}

}  // namespace

TEST(Matrix, RaggedInitializerThrows) {
  EXPECT_THROW((IntMatrix{{1, 2}, {3}}), DimensionError);
}

TEST(Det, SmallCases) {
  EXPECT_EQ(det_exact(IntMatrix{{2, 1}, {1, 2}}), 3);
  EXPECT_EQ(det_exact(IntMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(det_exact(IntMatrix{{1, 2}, {2, 4}}), 0);
  EXPECT_EQ(det_exact(IntMatrix::identity(5)), 1);
}

TEST(Det, LargeEntriesStayExact) {
  Integer big("123456789012345678901234567890");
  IntMatrix m{{big, 1}, {1, big}};
  EXPECT_EQ(det_exact(m), big * big - 1);
}

TEST(Hnf, ShapeAndReduction) {
  IntMatrix h = hnf(IntMatrix{{2, 0}, {0, 2}, {1, 1}});
  ASSERT_EQ(h.rows(), 2u);
  EXPECT_EQ(h(0, 0), 1);
  EXPECT_EQ(h(0, 1), 1);
  EXPECT_EQ(h(1, 0), 0);
  EXPECT_EQ(h(1, 1), 2);
}

TEST(Hnf, DropsZeroRows) {
  IntMatrix h = hnf(IntMatrix{{1, 2}, {2, 4}});
  EXPECT_EQ(h.rows(), 1u);
  EXPECT_EQ(rank_integer(IntMatrix{{1, 2}, {2, 4}}), 1u);
}

TEST(Smith, KnownDiagonal) {
  AbelianType t = snf_invariant_factors(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  EXPECT_EQ(t.to_string(), "12.6.2");
  EXPECT_EQ(t.order(), 144);
}

TEST(AbelianType, ParseAndRender) {
  EXPECT_EQ(AbelianType::parse("1").to_string(), "1");
  EXPECT_TRUE(AbelianType::parse("1").trivial());
  AbelianType t = AbelianType::parse("4.2");
  EXPECT_EQ(t.order(), 8);
  EXPECT_EQ(t.exponent(), 4);
  EXPECT_EQ(t.rank(), 2u);
  EXPECT_FALSE(t.cyclic());
  EXPECT_TRUE(AbelianType::parse("2.2.2").elementary(2));
  EXPECT_FALSE(AbelianType::parse("4").elementary(2));
  EXPECT_EQ(AbelianType::from_diagonal({6, 0, 1, 2}).to_string(), "6.2");
  EXPECT_EQ(AbelianType::from_diagonal({2, 3}).to_string(), "6");
  EXPECT_THROW(AbelianType::parse("2.4"), ValidationError);
  EXPECT_THROW(AbelianType::from_invariant_factors({3, 2}), ValidationError);
}

TEST(AbelianType, OrderThenString) {
  EXPECT_LT(AbelianType::parse("3"), AbelianType::parse("4"));
  EXPECT_LT(AbelianType::parse("2.2"), AbelianType::parse("4"));
  EXPECT_LT(AbelianType::parse("1"), AbelianType::parse("2"));
}

TEST(Inverse, SingularThrows) {
  EXPECT_THROW(inverse(RatMatrix{{1, 2}, {2, 4}}), NotABasis);
}

TEST(Adjugate, DefiningIdentity) {
  IntMatrix m{{3, 1, 4}, {1, 5, 9}, {2, 6, 5}};
  IntMatrix p = m * adjugate(m);
  Integer d = det_exact(m);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(p(i, j), i == j ? d : Integer(0));
}

// Property (d): at least 10^4 random square matrices of size <= 5.
TEST(LinalgProperty, DetSmithHnfAgreeWithOracles) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  int checked = 0, quotient_checked = 0;
  for (int iter = 0; iter < 10000; ++iter) {
    const std::size_t n = dim(rng);
    const long span = iter % 3 == 0 ? 1 : (iter % 3 == 1 ? 3 : 9);
    IntMatrix m = oracle::random_matrix(rng, n, n, -span, span);
    Integer d = det_exact(m);
    ASSERT_EQ(d, oracle::permutation_det(m));

    SmithForm f = smith_form(m);
    ASSERT_TRUE(is_unimodular(f.left));
    ASSERT_TRUE(is_unimodular(f.right));
    ASSERT_EQ(f.left * m * f.right, f.diagonal);
    Integer prod = 1;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) {
          ASSERT_EQ(f.diagonal(i, j), 0);
        }
      ASSERT_GE(f.diagonal(i, i), 0);
      if (i + 1 < n && sgn(f.diagonal(i, i)) != 0) {
        ASSERT_TRUE(mpz_divisible_p(f.diagonal(i + 1, i + 1).get_mpz_t(),
                                    f.diagonal(i, i).get_mpz_t()));
      }
      prod *= f.diagonal(i, i);
    }
    ASSERT_EQ(prod, abs(d));

    IntMatrix h = hnf(m);
    ASSERT_EQ(h.rows(), rank_integer(m));
    if (sgn(d) != 0) {
      ASSERT_EQ(h.rows(), n);
      ASSERT_EQ(abs(det_exact(h)), abs(d));
      for (std::size_t i = 0; i < n; ++i) {
        ASSERT_GT(h(i, i), 0);
        for (std::size_t k = 0; k < i; ++k) {
          ASSERT_GE(h(k, i), 0);
          ASSERT_LT(h(k, i), h(i, i));
        }
        for (std::size_t k = i + 1; k < n; ++k) ASSERT_EQ(h(k, i), 0);
      }
      ASSERT_TRUE(same_row_lattice(h, m));

      if (oracle::quotient_work(m) <= 20000) {
        oracle::FiniteQuotient q(m);
        ASSERT_EQ(q.order(), Integer(abs(d)).get_ui());
        ASSERT_EQ(snf_invariant_factors(m).to_string(),
                  oracle::factors_to_string(q.invariant_factors()));
        ++quotient_checked;
      }
    }
    ++checked;
  }
  EXPECT_GE(checked, 10000);
  EXPECT_GT(quotient_checked, 1000);
}

TEST(Rank, RationalAndInteger) {
  RatMatrix r{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  EXPECT_EQ(rank_rational(r), 2u);
  EXPECT_EQ(rank_integer(IntMatrix{{2, 0}, {0, 3}, {4, 6}}), 2u);
}
