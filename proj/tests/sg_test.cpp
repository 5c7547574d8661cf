#include "subgrad/sg.hpp"

#include <gtest/gtest.h>

#include "subgrad/testbeds.hpp"

namespace subgrad {
namespace {

Vector Vec1(double a) { return Vector::Constant(1, a); }
ConvexOracle X() { return Affine(Vec1(1.0)); }
ConvexOracle NegX() { return Affine(Vec1(-1.0)); }

TEST(SgStep, InfeasibleThenFeasibleBranch) {
  const ConstrainedProblem p(X(), {X()});
  SgStepResult r = SgStep(p, Vec1(0.5), 0.1);
  EXPECT_FALSE(r.feasible_branch);
  EXPECT_EQ(r.x[0], 0.0);

  r = SgStep(p, r.x, 0.1);
  EXPECT_TRUE(r.feasible_branch);
  EXPECT_DOUBLE_EQ(r.x[0], -0.1);
}

TEST(SgStep, ZeroObjectiveSubgradientTerminates) {
  const ConstrainedProblem p(Constant(1, 3.0), {X()});
  const SgStepResult r = SgStep(p, Vec1(-1.0), 0.1);
  EXPECT_TRUE(r.terminate);
  EXPECT_EQ(r.x[0], -1.0);
}

TEST(SgStep, RejectsUnreformulatedProblem) {
  const ConstrainedProblem p(X(), {X(), NegX()});
  EXPECT_THROW(SgStep(p, Vec1(0.0), 0.1), ConfigError);
}

TEST(SgStep, LinearizationDecreases) {
  InstanceRng rng(31);
  const TestInstance inst = GenerateRandom(1, 6, 4);
  const ConstrainedProblem p =
      ReformulateMax(ConstrainedProblem(inst.problem.objective(), {inst.problem.ineq(0)}));
  const double eps = 1e-2;
  int feasible_seen = 0, infeasible_seen = 0;
  for (int t = 0; t < 300; ++t) {
    const Vector x = rng.UniformVector(6, -0.3, 0.3);
    const SgStepResult r = SgStep(p, x, eps);
    ASSERT_FALSE(r.terminate);
    if (r.feasible_branch) {
      ++feasible_seen;
      const Vector g0 = p.objective()(x).subgrad;
      EXPECT_NEAR(g0.dot(x - r.x), eps, 1e-12);
    } else {
      ++infeasible_seen;
      const Evaluation fb = p.ineq(0)(x);
      EXPECT_NEAR(fb.subgrad.dot(x - r.x), fb.value, 1e-12 * (1 + fb.value));
    }
  }
  EXPECT_GT(feasible_seen, 0);
  EXPECT_GT(infeasible_seen, 0);
}

TEST(SgSolve, OneDimensionalAnalytic) {
  const ConstrainedProblem p(X(), {X()});
  SolverConfig cfg;
  cfg.eps = 0.1;
  cfg.K = 100;
  cfg.x0 = Vec1(0.5);
  const SolveReport r = SgSolve(p, cfg);
  ASSERT_TRUE(r.p_eps.has_value());
  EXPECT_LE(*r.p_eps, 0.1);
  EXPECT_EQ(r.status, SolveStatus::kCompleted);
}

TEST(SgSolve, UnconstrainedIsSubgradientDescent) {
  const ConstrainedProblem p(SqNorm(2, 0, 2, 1.0), {});
  SolverConfig cfg;
  cfg.eps = 1e-3;
  cfg.K = 50;
  cfg.x0 = Vector::Constant(2, 0.01);
  std::vector<Vector> xs;
  SgSolve(p, cfg, [&](int, const Vector& x) { xs.push_back(x); });
  ASSERT_EQ(xs.size(), 51u);
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const Vector g = 2.0 * xs[k];
    EXPECT_TRUE(xs[k + 1].isApprox(xs[k] - (cfg.eps / g.squaredNorm()) * g, 1e-14));
  }
}

TEST(SgSolve, ZeroIterationsGivesEmptyTrace) {
  const ConstrainedProblem p(X(), {X()});
  SolverConfig cfg;
  cfg.K = 0;
  const SolveReport r = SgSolve(p, cfg);
  EXPECT_TRUE(r.trace.empty());
  EXPECT_EQ(r.iterations, 0);
}

TEST(SgSolve, BestFeasibleValueNonIncreasingInK) {
  const TestInstance inst = GenerateRandom(1, 8, 2);
  std::optional<double> prev;
  for (int K : {10, 100, 500, 1000, 3000}) {
    SolverConfig cfg;
    cfg.eps = 1e-2;
    cfg.K = K;
    const SolveReport r = SgSolve(inst.problem, cfg);
    if (prev) {
      ASSERT_TRUE(r.p_eps.has_value());
      EXPECT_LE(*r.p_eps, *prev);
    }
    if (r.p_eps) prev = r.p_eps;
  }
  EXPECT_TRUE(prev.has_value());
}

TEST(SgSolve, TraceIsThinned) {
  const ConstrainedProblem p(X(), {NegX()});
  SolverConfig cfg;
  cfg.K = 95;
  cfg.trace_every = 10;
  const SolveReport r = SgSolve(p, cfg);
  ASSERT_EQ(r.trace.size(), 10u);
  EXPECT_EQ(r.trace.front().k, 10);
  EXPECT_EQ(r.trace.back().k, 95);
}

}  // namespace
}  // namespace subgrad
