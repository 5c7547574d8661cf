#include "subgrad/pds.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "subgrad/testbeds.hpp"

namespace subgrad {
namespace {

Vector Vec1(double a) { return Vector::Constant(1, a); }
Matrix Mat1(double a) { return Matrix::Constant(1, 1, a); }

// min x^2 s.t. x = 1.
ConstrainedProblem SquareOnLine() {
  return ConstrainedProblem(SqNorm(1, 0, 1, 1.0), {}, Mat1(1.0), Vec1(1.0));
}

TEST(PdsT, Example) {
  const ConstrainedProblem p = SquareOnLine();
  const Vector T = PdsT(p, DualPoint(p), 1.0, 2.0);
  ASSERT_EQ(T.size(), 2);
  EXPECT_EQ(T[0], -2.0);
  EXPECT_EQ(T[1], 1.0);
}

TEST(PdsT, PenaltyVanishesAtFeasiblePoint) {
  const ConstrainedProblem p(SqNorm(1, 0, 1, 1.0), {Shift(Affine(Vec1(1.0)), -2.0)},
                             Mat1(1.0), Vec1(1.0));
  const DualPoint z(Vec1(1.0), Vec1(0.7), Vec1(0.3));
  for (double rho : {0.1, 1.0, 10.0}) {
    const Vector T = PdsT(p, z, rho, 1.5);
    EXPECT_EQ(T[0], 2.0 + 0.3);  // g0 + A^T nu, no penalty
    EXPECT_EQ(T[1], 0.0);
    EXPECT_EQ(T[2], 0.0);
  }
}

TEST(PdsT, QuadraticPenaltyHasNoNormFactor) {
  // f1(x) = x - 1 at x = 3 gives F = 2, penalty subgradient 2F = 4.
  const ConstrainedProblem p(Constant(1, 0.0), {Shift(Affine(Vec1(1.0)), -1.0)});
  const DualPoint z(Vec1(3.0), Vec1(0.5), Vector(0));
  const Vector T = PdsT(p, z, 0.25, 2.0);
  EXPECT_DOUBLE_EQ(T[0], 0.5 + 0.25 * 4.0);
  EXPECT_EQ(T[1], -2.0);
}

TEST(PdsGamma, Examples) {
  EXPECT_EQ(PdsGamma(0, 0.3), 1.0);
  EXPECT_NEAR(PdsGamma(3, 0.5), std::pow(4.0, -0.75), 1e-15);
  EXPECT_NEAR(PdsGamma(3, 0.5), 0.35355, 1e-5);
  EXPECT_NEAR(PdsGamma(99, 0.99), 0.09772, 1e-5);
  EXPECT_THROW(PdsGamma(1, 1.0), ConfigError);
}

TEST(PdsGamma, SquaredSumsBounded) {
  double sum = 0.0, prev = 0.0;
  for (int k = 0; k <= 1000000; ++k) {
    sum += PdsGamma(k, 0.5) * PdsGamma(k, 0.5);
    ASSERT_GE(sum, prev);
    ASSERT_LE(sum, 2.62) << k;
    prev = sum;
  }
}

TEST(PdsStep, FirstStepExample) {
  const ConstrainedProblem p = SquareOnLine();
  SolverConfig cfg;
  cfg.rho = 1.0;
  PdsState st = PdsState::Initial(p, cfg);
  ASSERT_TRUE(PdsStep(p, st));
  EXPECT_NEAR(st.z.x()[0], 2.0 / std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(st.z.nu()[0], -1.0 / std::sqrt(5.0), 1e-15);
}

TEST(PdsStep, StationaryPointTerminates) {
  const ConstrainedProblem p = SquareOnLine();
  SolverConfig cfg;
  cfg.x0 = Vec1(1.0);
  cfg.nu0 = Vec1(-2.0);
  PdsState st = PdsState::Initial(p, cfg);
  EXPECT_FALSE(PdsStep(p, st));
  EXPECT_EQ(st.z.x()[0], 1.0);
  EXPECT_EQ(PdsSolve(p, cfg).status, SolveStatus::kSaddleTerminated);
}

TEST(PdsSolve, StepLengthAndMultiplierSign) {
  for (int seed : {1, 2}) {
    const TestInstance inst = GenerateRandom(2, 8, seed);
    SolverConfig cfg;
    cfg.K = 2000;
    cfg.s_exp = 1.5;
    Vector prev;
    PdsSolve(inst.problem, cfg, [&](int k, const PdsState& st) {
      ASSERT_TRUE((st.z.lambda().array() >= 0.0).all());
      if (k > 0) {
        const double gamma = PdsGamma(k - 1, cfg.delta_exp);
        ASSERT_NEAR((st.z.stacked() - prev).norm(), gamma, 1e-12 * gamma);
      }
      prev = st.z.stacked();
    });
  }
}

TEST(PdsSolve, MonotonicityAgainstKnownSaddle) {
  // min x s.t. -x <= 0 has the saddle point (0, 1) for every rho and s.
  const ConstrainedProblem p(Affine(Vec1(1.0)), {Affine(Vec1(-1.0))});
  const Vector z_star = (Vector(2) << 0.0, 1.0).finished();
  for (double s : {1.0, 1.5, 2.0}) {
    SolverConfig cfg;
    cfg.K = 10000;
    cfg.s_exp = s;
    double worst = INFINITY;
    PdsSolve(p, cfg, [&](int, const PdsState& st) {
      const Vector T = PdsT(p, st.z, st.rho, st.s_exp);
      worst = std::min(worst, T.dot(st.z.stacked() - z_star));
    });
    EXPECT_GE(worst, -1e-9) << "s=" << s;
  }
}

TEST(PdsSolve, BestTIndexWithReference) {
  const ConstrainedProblem p(Affine(Vec1(1.0)), {Affine(Vec1(-1.0))});
  SolverConfig cfg;
  cfg.K = 200;
  const SolveReport r =
      PdsSolve(p, cfg, {}, DualPoint(Vec1(0.0), Vec1(1.0), Vector(0)));
  ASSERT_TRUE(r.best_t_index.has_value());
  EXPECT_GE(*r.best_t_index, 1);
  EXPECT_LE(*r.best_t_index, 200);
}

TEST(PdsSolve, ConvergesOnSquareOnLine) {
  SolverConfig cfg;
  cfg.K = 10000;
  const SolveReport r = PdsSolve(SquareOnLine(), cfg);
  EXPECT_NEAR(r.x_out[0], 1.0, 1e-2);
  EXPECT_NEAR(r.final_val, 1.0, 2e-2);
}

TEST(PdsSolve, RejectsBadParameters) {
  const ConstrainedProblem p = SquareOnLine();
  SolverConfig cfg;
  cfg.s_exp = 2.5;
  EXPECT_THROW(PdsSolve(p, cfg), ConfigError);
  cfg.s_exp = 2.0;
  cfg.rho = 0.0;
  EXPECT_THROW(PdsSolve(p, cfg), ConfigError);
  cfg.rho.reset();
  cfg.delta_exp = 1.0;
  EXPECT_THROW(PdsSolve(p, cfg), ConfigError);
}

}  // namespace
}  // namespace subgrad
