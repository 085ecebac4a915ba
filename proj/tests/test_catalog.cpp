#include <gtest/gtest.h>

#include "latidx/catalog.hpp"
#include "latidx/index_engine.hpp"

using namespace latidx;

TEST(RootLattice, Cartan) {
  EXPECT_EQ(root_lattice(RootFamily::A, 2).entries(), (RatMatrix{{2, -1}, {-1, 2}}));
  EXPECT_EQ(det_exact(IntMatrix{{2, -1}, {-1, 2}}), 3);
  // determinants n+1, 4, 3, 2, 1
  auto det_of = [](const GramMatrix& g) {
    IntMatrix m(g.dim(), g.dim());
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (std::size_t j = 0; j < g.dim(); ++j) m(i, j) = g(i, j).get_num();
    return det_exact(m);
  };
  for (std::size_t n = 1; n <= 8; ++n) EXPECT_EQ(det_of(root_lattice(RootFamily::A, n)), n + 1);
  for (std::size_t n = 4; n <= 8; ++n) EXPECT_EQ(det_of(root_lattice(RootFamily::D, n)), 4);
  EXPECT_EQ(det_of(root_lattice(RootFamily::E, 6)), 3);
  EXPECT_EQ(det_of(root_lattice(RootFamily::E, 7)), 2);
  EXPECT_EQ(det_of(root_lattice(RootFamily::E, 8)), 1);
}

TEST(RootLattice, InvalidCombinations) {
  EXPECT_THROW(root_lattice(RootFamily::D, 3), ValidationError);
  EXPECT_THROW(root_lattice(RootFamily::E, 5), ValidationError);
  EXPECT_THROW(root_lattice(RootFamily::E, 9), ValidationError);
  EXPECT_THROW(root_lattice(RootFamily::A, 0), ValidationError);
}

TEST(Glue, HalfAllOnesOverZ4) {
  GlueResult r = glue({make_gram(IntMatrix::identity(4)), {{Rational(1, 2), Rational(1, 2),
                                                             Rational(1, 2), Rational(1, 2)}}});
  EXPECT_EQ(r.index, 2);
  MinimalVectorSet mv = minimal_vectors(r.gram);
  EXPECT_EQ(mv.minimum, 1);
  EXPECT_EQ(mv.s(), 12u);
  // the Gram is the Gram of the listed basis
  EXPECT_EQ(r.gram, make_gram(IntMatrix::identity(4)).change_basis(r.basis));
}

TEST(Glue, IntegralVectorGivesIndexOne) {
  GramMatrix base = root_lattice(RootFamily::D, 4);
  GlueResult r = glue({base, {{1, 0, 2, -1}}});
  EXPECT_EQ(r.index, 1);
  EXPECT_EQ(index_system(r.gram).system, index_system(base).system);
}

TEST(Glue, WeightFourWordGivesQuotientTwo) {
  for (std::size_t n = 4; n <= 6; ++n) {
    std::vector<Rational> v(n, 0);
    for (std::size_t i = 0; i < 4; ++i) v[i] = Rational(1, 2);
    GlueResult r = glue({make_gram(IntMatrix::identity(n)), {v}});
    EXPECT_TRUE(index_system(r.gram).contains(AbelianType::parse("2"))) << n;
  }
}

TEST(Glue, RejectsWrongLength) {
  EXPECT_THROW(glue({make_gram(IntMatrix::identity(3)), {{Rational(1, 2)}}}), DimensionError);
}

TEST(Family, BaseAndGlueVector) {
  FamilySpec spec;
  spec.n = 7;
  spec.d = 4;
  spec.blocks = {5, 2};
  spec.x = {Rational(1, 5)};
  GramMatrix base = family_base(spec);
  for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(base(i, i), 1);
  EXPECT_EQ(base(0, 4), Rational(1, 5));
  EXPECT_EQ(base(5, 6), 0);
  EXPECT_EQ(base(0, 5), 0);
  std::vector<Rational> e = family_glue_vector(spec);
  EXPECT_EQ(e, (std::vector<Rational>{Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4),
                                      Rational(1, 4), Rational(1, 2), Rational(1, 2)}));
}

TEST(Family, OverridesAreSymmetricAndLast) {
  FamilySpec spec;
  spec.n = 4;
  spec.d = 2;
  spec.blocks = {4};
  spec.x = {Rational(1, 10)};
  spec.overrides = {{2, 0, Rational(1, 7)}};
  GramMatrix base = family_base(spec);
  EXPECT_EQ(base(0, 2), Rational(1, 7));
  EXPECT_EQ(base(2, 0), Rational(1, 7));
  EXPECT_EQ(base(1, 3), Rational(1, 10));
}

TEST(Family, NotPositiveDefiniteNamesMinor) {
  FamilySpec spec;
  spec.n = 3;
  spec.blocks = {3};
  spec.x = {Rational(-3, 4)};
  try {
    build_family(spec);
    FAIL();
  } catch (const GramError& e) {
    EXPECT_EQ(e.kind(), GramError::Kind::NotPositiveDefinite);
    EXPECT_EQ(e.row(), 2u);
  }
}

TEST(Family, IndexSystems) {
  FamilySpec spec;
  spec.n = 7;
  spec.d = 4;
  spec.blocks = {5, 2};
  spec.x = {Rational(1, 5)};
  GlueResult r = build_family(spec);
  EXPECT_EQ(r.index, 4);
  EXPECT_EQ(minimal_vectors(r.gram).minimum, 1);
  auto sys = index_system(r.gram).system;
  EXPECT_EQ(sys, (std::set<AbelianType>{AbelianType::parse("4")}));

  FamilySpec nine;
  nine.n = 9;
  nine.d = 4;
  nine.blocks = {9};
  nine.x = {Rational(7, 72)};
  auto sys9 = index_system(build_family(nine).gram).system;
  EXPECT_EQ(sys9, (std::set<AbelianType>{AbelianType::parse("1"), AbelianType::parse("4")}));
}

TEST(Named, VerbatimMatricesAreIntegralPrimitive) {
  for (const auto& name : catalog_names()) {
    GramMatrix g = named_matrix(name);
    Integer gcd = 0;
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (std::size_t j = 0; j < g.dim(); ++j) {
        ASSERT_EQ(g(i, j).get_den(), 1) << name;
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), g(i, j).get_num_mpz_t());
      }
    EXPECT_EQ(gcd, 1) << name;
  }
}

TEST(Named, Shapes) {
  GramMatrix a11 = named_matrix("An11i234");
  ASSERT_EQ(a11.dim(), 11u);
  EXPECT_EQ(a11(0, 0), 8600);
  for (std::size_t i = 1; i < 11; ++i) EXPECT_EQ(a11(i, i), 1440);
  EXPECT_EQ(named_matrix("An15i34").dim(), 15u);
  GramMatrix i5 = named_matrix("index5-s9");
  ASSERT_EQ(i5.dim(), 8u);
  const int first_row[] = {1404, 534, 534, 534, 702, 697, 697, 697};
  for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(i5(0, j), first_row[j]);
  EXPECT_EQ(named_matrix("M32").dim(), 8u);
  EXPECT_EQ(named_matrix("W75").dim(), 8u);
  EXPECT_EQ(named_matrix("eutactic-path-7").dim(), 7u);
}

TEST(Named, MinimalVectorCounts) {
  EXPECT_EQ(minimal_vectors(named_matrix("An11i234")).s(), 12u);
  EXPECT_EQ(minimal_vectors(named_matrix("An15i34")).s(), 16u);
  EXPECT_EQ(minimal_vectors(named_matrix("index5-s9")).s(), 9u);
  EXPECT_EQ(minimal_vectors(named_matrix("M32")).s(), 32u);
  EXPECT_EQ(minimal_vectors(named_matrix("W75")).s(), 75u);
  EXPECT_EQ(minimal_vectors(named_matrix("eutactic-path-7")).s(), 32u);
}

TEST(Named, GeneratedAndUnknown) {
  EXPECT_EQ(named_matrix("E7"), root_lattice(RootFamily::E, 7));
  EXPECT_EQ(named_matrix("D5"), root_lattice(RootFamily::D, 5));
  EXPECT_EQ(named_matrix("Z3"), make_gram(IntMatrix::identity(3)));
  EXPECT_FALSE(find_named_matrix("E9").has_value());
  try {
    named_matrix("nonsense");
    FAIL();
  } catch (const ValidationError& e) {
    std::string what = e.what();
    for (const auto& name : catalog_names()) EXPECT_NE(what.find(name), std::string::npos);
  }
}

TEST(Named, RootLatticesOfTypeAHaveTrivialSystem) {
  for (std::size_t n = 2; n <= 7; ++n)
    EXPECT_EQ(index_system(root_lattice(RootFamily::A, n)).system,
              (std::set<AbelianType>{AbelianType::parse("1")}))
        << n;
}
