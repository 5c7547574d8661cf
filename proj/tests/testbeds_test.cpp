#include "subgrad/testbeds.hpp"

#include <gtest/gtest.h>

#include "subgrad/validate.hpp"

namespace subgrad {
namespace {

TEST(GenerateRandom, Shapes) {
  const TestInstance c2 = GenerateRandom(2, 10, 1);
  EXPECT_EQ(c2.problem.n(), 10);
  EXPECT_EQ(c2.problem.m(), 21);
  EXPECT_EQ(c2.problem.l(), 2);

  const TestInstance c1 = GenerateRandom(1, 10, 1);
  EXPECT_EQ(c1.problem.m(), 1);
  EXPECT_EQ(c1.problem.l(), 2);

  EXPECT_EQ(GenerateRandom(1, 7, 1).problem.l(), 1);
  EXPECT_EQ(GenerateRandom(1, 8, 1).problem.l(), 2);
  EXPECT_EQ(GenerateRandom(1, 1000, 1).problem.l(), 143);
}

TEST(GenerateRandom, RejectsBadArguments) {
  EXPECT_THROW(GenerateRandom(3, 10, 1), ConfigError);
  EXPECT_THROW(GenerateRandom(1, 1, 1), ConfigError);
}

TEST(GenerateRandom, AnchorIsFeasible) {
  for (int case_id : {1, 2}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const TestInstance inst = GenerateRandom(case_id, 12, seed);
      ASSERT_TRUE(inst.anchor.has_value());
      const Vector F = ConstraintViolations(inst.problem, *inst.anchor);
      EXPECT_EQ(F.norm(), 0.0);
      EXPECT_LE(inst.problem.EqualityResidual(*inst.anchor).norm(), 1e-12);
    }
  }
}

TEST(GenerateRandom, DeterministicPerSeed) {
  const TestInstance a = GenerateRandom(1, 10, 42), b = GenerateRandom(1, 10, 42),
                     c = GenerateRandom(1, 10, 43);
  EXPECT_EQ(a.problem.A(), b.problem.A());
  EXPECT_EQ(a.problem.b(), b.problem.b());
  EXPECT_EQ(*a.anchor, *b.anchor);
  EXPECT_NE(a.problem.A(), c.problem.A());
  const Vector x = Vector::LinSpaced(10, -0.5, 0.5);
  EXPECT_EQ(a.problem.objective().Value(x), b.problem.objective().Value(x));
}

TEST(InstanceRng, UnitInterval) {
  InstanceRng rng(0);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.Uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(BuildLad, Shapes) {
  const TestInstance small = BuildLad(10, 1);
  EXPECT_EQ(small.problem.n(), 30);
  EXPECT_EQ(small.problem.l(), 20);
  EXPECT_EQ(small.problem.m(), 0);
  const TestInstance big = BuildLad(1000, 1);
  EXPECT_EQ(big.problem.n(), 3000);
  EXPECT_EQ(big.problem.l(), 2000);
}

TEST(BuildLad, ObjectiveIsResidualNormAtAnchorFamily) {
  const TestInstance inst = BuildLad(5, 2);
  const ConstrainedProblem& p = inst.problem;
  // For any x, y = Dx - w is feasible and the objective equals ||Dx - w||_1.
  const Matrix D = -p.A().leftCols(5);
  const Vector w = -p.b();
  InstanceRng rng(3);
  for (int t = 0; t < 20; ++t) {
    const Vector x = rng.UniformVector(5, -1, 1);
    Vector z(p.n());
    z << x, D * x - w;
    EXPECT_LE(InfeasibilityNorm(p, z), 1e-12);
    EXPECT_NEAR(p.objective().Value(z), (D * x - w).lpNorm<1>(), 1e-12);
  }
}

TEST(BuildSvm, Shapes) {
  const TestInstance two = BuildSvm(2, 1);
  EXPECT_EQ(two.problem.n(), 403);
  EXPECT_EQ(two.problem.l(), 400);
  const TestInstance five = BuildSvm(5, 1);
  EXPECT_EQ(five.problem.n(), 1006);
  EXPECT_EQ(five.problem.l(), 1000);
}

TEST(BuildSvm, ObjectiveAtOriginIsOne) {
  const TestInstance inst = BuildSvm(2, 4);
  EXPECT_NEAR(inst.problem.objective().Value(Vector::Zero(inst.problem.n())), 1.0, 1e-12);
  EXPECT_EQ(InfeasibilityNorm(inst.problem, *inst.anchor), 0.0);
}

TEST(Testbeds, OraclesPassValidation) {
  const std::vector<TestInstance> instances = {GenerateRandom(1, 10, 1),
                                               GenerateRandom(2, 10, 1), BuildLad(10, 1),
                                               BuildSvm(1, 1)};
  for (const auto& inst : instances) {
    const ConstrainedProblem& p = inst.problem;
    std::vector<ConvexOracle> oracles{p.objective()};
    for (int i = 0; i < p.m(); ++i) oracles.push_back(p.ineq(i));
    for (std::size_t i = 0; i < oracles.size(); ++i) {
      ValidationOptions opt;
      opt.radius = 0.9;
      opt.seed = i;
      opt.in_domain = LogBarrierDomain(0);
      const ValidationReport rep = ValidateSubgradient(oracles[i], opt);
      EXPECT_TRUE(rep.ok()) << inst.label << " oracle " << i << " worst "
                            << rep.worst_violation;
      EXPECT_GT(rep.pairs_checked, 500) << inst.label;
    }
  }
}

}  // namespace
}  // namespace subgrad
