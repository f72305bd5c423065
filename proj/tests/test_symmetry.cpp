#include <gtest/gtest.h>

#include <vector>

#include "oracles.hpp"
#include "sparsesos/basis.hpp"
#include "sparsesos/generators.hpp"
#include "sparsesos/graph.hpp"
#include "sparsesos/parser.hpp"
#include "sparsesos/symmetry.hpp"

using namespace sparsesos;

TEST(SignSymmetry, TwoVarQuartic) {
  const auto f = parse("x^2*y^2 + x^2 + y^2 + 1 - x*y");
  const auto S = sign_symmetries(support(f));
  ASSERT_EQ(S.generators.size(), 1u);
  EXPECT_EQ(S.generators[0], (BitVector{1, 1}));

  const auto B = full_basis(2, 2);
  const auto classes = sign_blocks(B, S);
  const auto comps = build_graph(support(f), B).components();
  EXPECT_EQ(classes.size(), 2u);
  EXPECT_TRUE(refines(comps, classes, B.size()));
  EXPECT_TRUE(refines(classes, comps, B.size()));
}

TEST(SignSymmetry, EvenPolynomialHasFullGroup) {
  const auto f = parse("x^2*y^4*z^2 + x^4 + 3*y^2 + z^6 + 1");
  EXPECT_EQ(sign_symmetries(support(f)).generators.size(), 3u);
}

TEST(SignSymmetry, UnitVectorsKillEverything) {
  const auto f = parse("x + y + z + 1");
  EXPECT_TRUE(sign_symmetries(support(f)).generators.empty());
}

TEST(SignSymmetry, RankNullityOnBm) {
  for (int m = 1; m <= 3; ++m) {
    const auto f = gen_bm(m);
    const auto A = support(f);
    const auto S = sign_symmetries(A, f.nvars());
    // Every generator annihilates every support point mod 2.
    for (const auto& r : S.generators)
      for (const auto& a : A) {
        int s = 0;
        for (std::size_t i = 0; i < f.nvars(); ++i) s += r[i] * a[i];
        EXPECT_EQ(s % 2, 0);
      }
  }
}

TEST(SignSymmetry, BlocksMatchBruteForceAndComponentsOnB1) {
  const auto f = gen_bm(1);
  const auto A = support(f);
  const auto B = reduce_basis(initial_basis(newton_vertices(A)), A);
  const auto S = sign_symmetries(A, f.nvars());
  const auto classes = sign_blocks(B, S);
  const std::vector<Exponent> supp(A.begin(), A.end());
  EXPECT_EQ(classes, oracle::brute_force_sign_classes(supp, B.exponents(), f.nvars()));
  const auto comps = build_graph(A, B).components();
  EXPECT_TRUE(refines(comps, classes, B.size()));
}

TEST(SignSymmetry, ComponentsRefineClassesOnRandomInputs) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Polynomial f;
    try {
      f = gen_randpoly(4, 2, 2, 0.2, seed);
    } catch (const DegenerateDraw&) {
      continue;
    }
    const auto A = support(f);
    const auto B = reduce_basis(initial_basis(newton_vertices(A)), A);
    const auto S = sign_symmetries(A, f.nvars());
    const auto classes = sign_blocks(B, S);
    const std::vector<Exponent> supp(A.begin(), A.end());
    EXPECT_EQ(classes, oracle::brute_force_sign_classes(supp, B.exponents(), f.nvars())) << "seed " << seed;
    EXPECT_TRUE(refines(build_graph(A, B).components(), classes, B.size())) << "seed " << seed;
  }
}

TEST(Refines, Basic) {
  EXPECT_TRUE(refines({{0}, {1, 2}}, {{0, 1, 2}}, 3));
  EXPECT_FALSE(refines({{0, 1}}, {{0}, {1}}, 2));
}
