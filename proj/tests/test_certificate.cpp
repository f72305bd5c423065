#include <gtest/gtest.h>

#include <vector>

#include "sparsesos/generators.hpp"
#include "sparsesos/parser.hpp"
#include "sparsesos/pipeline.hpp"

using namespace sparsesos;

TEST(Certificate, PerfectSquareUpToSign) {
  const auto f = parse("x^2 + 2*x*y + y^2");
  const auto r = certify(f);
  ASSERT_EQ(r.report.verdict, Verdict::Sos);
  ASSERT_EQ(r.certificate.gs.size(), 1u);
  const auto& g = r.certificate.gs[0];
  const double s = g.coefficient(Exponent{1, 0}) > 0 ? 1.0 : -1.0;
  EXPECT_NEAR(s * g.coefficient(Exponent{1, 0}), 1.0, 1e-6);
  EXPECT_NEAR(s * g.coefficient(Exponent{0, 1}), 1.0, 1e-6);
}

TEST(Certificate, SeparableSquares) {
  const auto f = parse("x^2 + 1");
  const auto r = certify(f);
  ASSERT_EQ(r.report.verdict, Verdict::Sos);
  ASSERT_EQ(r.certificate.gs.size(), 2u);
  for (const auto& g : r.certificate.gs) {
    ASSERT_EQ(g.size(), 1u);
    EXPECT_NEAR(std::abs(g.terms().begin()->second), 1.0, 1e-6);
  }
  EXPECT_LE(r.certificate.residual, 1e-9);
}

TEST(Certificate, SupportAndCountBounds) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const auto f = gen_randpoly(3, 2, 2, 0.3, seed);
    const auto r = certify(f);
    ASSERT_EQ(r.report.verdict, Verdict::Sos) << "seed " << seed << ": " << r.report.message;
    std::size_t total = 0;
    for (const auto& c : r.cover.cliques) total += c.size();
    EXPECT_LE(r.certificate.gs.size(), total);
    ASSERT_EQ(r.certificate.block_of.size(), r.certificate.gs.size());
    for (std::size_t i = 0; i < r.certificate.gs.size(); ++i) {
      const auto& clique = r.cover.cliques[r.certificate.block_of[i]];
      for (const auto& [e, c] : r.certificate.gs[i].terms()) {
        const auto idx = r.basis.index_of(e);
        ASSERT_TRUE(idx.has_value());
        EXPECT_TRUE(std::find(clique.begin(), clique.end(), *idx) != clique.end());
      }
    }
    EXPECT_DOUBLE_EQ(r.certificate.residual, residual(f, r.certificate.gs));
  }
}

TEST(Certificate, RefusesNonFeasible) {
  GramSolution s;
  s.status = SolveStatus::Infeasible;
  EXPECT_THROW(extract(parse("x"), s, CliqueCover{}, MonomialBasis{}), Error);
}
