// Dual subgradient method with weighted dual averages on the Lagrangian
//
//   L(x, lambda, nu) = f0(x) + lambda.F(x) + nu.(Ax - b),  F_i = max{f_i, 0}.
//
// Every iteration normalizes G(z) = (G_x, -F(x), -(Ax - b)), accumulates it
// in s, and sets z = z0 - s / beta_k with beta_{k+1} = beta_k + 1/beta_k.
// The primal output is the 1/||G||-weighted average of the x iterates.
//
// Multi mode works on the native constraints; single mode first collapses
// them into one max-constraint, which gives the single-multiplier variant.

#ifndef SUBGRAD_DSG_HPP_
#define SUBGRAD_DSG_HPP_

#include <utility>

#include "subgrad/problem.hpp"
#include "subgrad/report.hpp"

namespace subgrad {

// Below this norm of G the dual-averaging update is undefined and the
// iterate is reported as a saddle-point candidate.
inline constexpr double kSaddleTolerance = 1e-14;

enum class DsgMode { kMulti, kSingle };

struct DsgState {
  DualPoint z;
  DualPoint z0;
  Vector s_acc;
  double beta = 1.0;
  double delta = 0.0;
  Vector x_hat;
  // Weighted average x_hat / delta; empty until the first step.
  Vector x_bar;
  int k = 0;
  // Number of steps in which some multiplier decreased. Only lambda >= lambda0
  // is guaranteed by the update.
  int lambda_step_decreases = 0;

  static DsgState Initial(const ConstrainedProblem& p, const SolverConfig& cfg);
};

namespace detail {

inline DualPoint StartingPoint(const ConstrainedProblem& p,
                               const SolverConfig& cfg) {
  DualPoint z(p);
  if (cfg.x0) {
    p.CheckPoint(*cfg.x0);
    z.x() = *cfg.x0;
  }
  if (cfg.lambda0) {
    if (cfg.lambda0->size() != p.m()) throw ConfigError("lambda0 length mismatch");
    if ((cfg.lambda0->array() < 0.0).any()) throw ConfigError("lambda0 must be >= 0");
    z.lambda() = *cfg.lambda0;
  }
  if (cfg.nu0) {
    if (cfg.nu0->size() != p.l()) throw ConfigError("nu0 length mismatch");
    z.nu() = *cfg.nu0;
  }
  return z;
}

// x-block of a Lagrangian subgradient with per-constraint weights w_i:
// g0 + sum_i w_i g_i + A^T mult, g_i from the positive-part selection.
// Also returns F(x).
inline Vector LagrangianSubgradX(const ConstrainedProblem& p, const Vector& x,
                                 const Eigen::Ref<const Vector>& weights,
                                 const Eigen::Ref<const Vector>& eq_mult,
                                 Vector& F) {
  Vector gx = p.objective()(x).subgrad;
  F.resize(p.m());
  for (int i = 0; i < p.m(); ++i) {
    Evaluation e = p.ineq(i)(x);
    if (e.value > 0.0) {
      F[i] = e.value;
      gx += weights[i] * e.subgrad;
    } else {
      F[i] = 0.0;
    }
  }
  if (p.l() > 0) gx.noalias() += p.A().transpose() * eq_mult;
  return gx;
}

}  // namespace detail

inline DsgState DsgState::Initial(const ConstrainedProblem& p,
                                  const SolverConfig& cfg) {
  DualPoint z0 = detail::StartingPoint(p, cfg);
  DsgState st{z0, z0, Vector::Zero(z0.stacked().size()), 1.0, 0.0,
              Vector::Zero(p.n()), Vector(), 0, 0};
  return st;
}

// (G_x, -F(x), -(Ax - b)) at z.
inline Vector DsgG(const ConstrainedProblem& p, const DualPoint& z) {
  if (!z.Matches(p)) throw std::invalid_argument("dual point does not match problem");
  const Vector x = z.x();
  Vector F;
  Vector G(p.n() + p.m() + p.l());
  G.head(p.n()) = detail::LagrangianSubgradX(p, x, z.lambda(), z.nu(), F);
  G.segment(p.n(), p.m()) = -F;
  if (p.l() > 0) G.tail(p.l()) = -(p.A() * x - p.b());
  return G;
}

// Applies one dual-averaging update in place. Returns false, leaving the
// state untouched, when ||G(z^(k))|| <= kSaddleTolerance.
[[nodiscard]] inline bool DsgStep(const ConstrainedProblem& p, DsgState& st) {
  const Vector G = DsgG(p, st.z);
  const double gnorm = G.norm();
  if (gnorm <= kSaddleTolerance) return false;

  const Vector lambda_prev = st.z.lambda();
  const Vector x_k = st.z.x();
  st.s_acc += G / gnorm;
  st.z.stacked() = st.z0.stacked() - st.s_acc / st.beta;
  st.beta += 1.0 / st.beta;
  st.delta += 1.0 / gnorm;
  st.x_hat += x_k / gnorm;
  st.x_bar = st.x_hat / st.delta;
  ++st.k;
  if (p.m() > 0 && (st.z.lambda().array() < lambda_prev.array()).any()) {
    ++st.lambda_step_decreases;
  }
  return true;
}

// Runs K iterations. Trace entry k holds f0(xbar^(k)) and the infeasibility
// of xbar^(k): ||F|| + ||Ax - b|| in multi mode, max{fbar, 0} in single mode.
// `observer(k, state)` is called for the initial state and after every step.
template <class Observer = detail::NoObserver>
SolveReport DsgSolve(const ConstrainedProblem& problem, const SolverConfig& cfg,
                     DsgMode mode = DsgMode::kMulti, Observer&& observer = {}) {
  ValidateCommon(cfg);
  if (mode == DsgMode::kSingle && problem.m() + problem.l() == 0) {
    throw ConfigError("single-multiplier DSG needs at least one constraint");
  }
  const ConstrainedProblem p =
      mode == DsgMode::kSingle ? ReformulateMax(problem) : problem;

  SolverConfig run_cfg = cfg;
  if (mode == DsgMode::kSingle) {
    // Multiplier starting values refer to the original constraints.
    run_cfg.lambda0.reset();
    run_cfg.nu0.reset();
  }
  DsgState st = DsgState::Initial(p, run_cfg);
  observer(0, std::as_const(st));

  detail::TraceRecorder rec(cfg.eps, cfg.trace_every, cfg.K);
  double val = std::numeric_limits<double>::quiet_NaN();
  double infeas = std::numeric_limits<double>::quiet_NaN();
  bool saddle = false;
  while (st.k < cfg.K) {
    if (!DsgStep(p, st)) {
      saddle = true;
      break;
    }
    val = p.objective().Value(st.x_bar);
    infeas = InfeasibilityNorm(p, st.x_bar);
    rec.Record(st.k, val, infeas);
    observer(st.k, std::as_const(st));
  }
  if (saddle && st.k > 0) rec.Record(st.k, val, infeas, /*force=*/true);
  SolveReport report = rec.Finish(st.x_bar, val, infeas, st.k, saddle);
  if (saddle && st.k == 0) {
    // Stationary at z0: the starting point itself is the candidate.
    report.x_out = st.z.x();
    report.final_val = p.objective().Value(report.x_out);
    report.final_infeas = InfeasibilityNorm(p, report.x_out);
  }
  return report;
}

}  // namespace subgrad

#endif  // SUBGRAD_DSG_HPP_
