// Switching subgradient method on the single-constraint reformulation
//
//   min f0(x)  s.t.  fbar(x) <= 0.
//
// Productive steps (fbar(x) <= eps) move along -g0 with length eps/||g0||;
// otherwise a Polyak-type step on fbar is taken.

#ifndef SUBGRAD_SG_HPP_
#define SUBGRAD_SG_HPP_

#include <algorithm>
#include <optional>
#include <utility>

#include "subgrad/problem.hpp"
#include "subgrad/report.hpp"

namespace subgrad {

struct SgStepResult {
  Vector x;
  bool feasible_branch = false;
  // The active branch produced a zero subgradient; x is unchanged.
  bool terminate = false;
};

namespace detail {

inline void CheckSingleConstraintShape(const ConstrainedProblem& p) {
  if (p.m() > 1 || p.l() != 0) {
    throw ConfigError("SG step expects a problem with at most one inequality "
                      "and no equalities (apply ReformulateMax first)");
  }
}

// fbar at x, or nullopt for an unconstrained problem.
inline std::optional<Evaluation> EvalMaxConstraint(const ConstrainedProblem& p,
                                                   const Vector& x) {
  if (p.m() == 0) return std::nullopt;
  return p.ineq(0)(x);
}

inline SgStepResult SgStepFrom(const ConstrainedProblem& p, const Vector& x,
                               double eps, const std::optional<Evaluation>& fbar) {
  SgStepResult r;
  if (!fbar || fbar->value <= eps) {
    r.feasible_branch = true;
    const Evaluation g0 = p.objective()(x);
    const double sq = g0.subgrad.squaredNorm();
    if (sq == 0.0) {
      r.x = x;
      r.terminate = true;
      return r;
    }
    r.x = x - (eps / sq) * g0.subgrad;
    return r;
  }
  const double sq = fbar->subgrad.squaredNorm();
  if (sq == 0.0) {
    r.x = x;
    r.terminate = true;
    return r;
  }
  r.x = x - (fbar->value / sq) * fbar->subgrad;
  return r;
}

}  // namespace detail

// One SG update. `p` must already have the single-constraint shape
// (m <= 1, l == 0); m == 0 means every step is a productive step.
inline SgStepResult SgStep(const ConstrainedProblem& p, const Vector& x,
                           double eps) {
  detail::CheckSingleConstraintShape(p);
  p.CheckPoint(x);
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
  return detail::SgStepFrom(p, x, eps, detail::EvalMaxConstraint(p, x));
}

// Runs K SG iterations. The reported infeasibility is max{fbar(x^(k)), 0};
// val is f0(x^(k)). x^(0) takes part in p_eps but is not traced.
// `observer(k, x)` is called for every iterate including x^(0).
template <class Observer = detail::NoObserver>
SolveReport SgSolve(const ConstrainedProblem& problem, const SolverConfig& cfg,
                    Observer&& observer = {}) {
  ValidateCommon(cfg);
  const ConstrainedProblem p =
      problem.m() + problem.l() >= 1 ? ReformulateMax(problem) : problem;

  Vector x = cfg.x0.value_or(Vector::Zero(p.n()));
  p.CheckPoint(x);

  detail::TraceRecorder rec(cfg.eps, cfg.trace_every, cfg.K);
  std::optional<Evaluation> fbar = detail::EvalMaxConstraint(p, x);
  auto infeas_of = [](const std::optional<Evaluation>& e) {
    return e ? std::max(e->value, 0.0) : 0.0;
  };
  double val = p.objective().Value(x);
  rec.Observe(0, val, infeas_of(fbar));
  observer(0, std::as_const(x));

  bool saddle = false;
  int k = 0;
  while (k < cfg.K) {
    SgStepResult step = detail::SgStepFrom(p, x, cfg.eps, fbar);
    if (step.terminate) {
      saddle = true;
      break;
    }
    ++k;
    x = std::move(step.x);
    fbar = detail::EvalMaxConstraint(p, x);
    val = p.objective().Value(x);
    rec.Record(k, val, infeas_of(fbar));
    observer(k, std::as_const(x));
  }
  if (saddle && k > 0) rec.Record(k, val, infeas_of(fbar), /*force=*/true);
  const double infeas = infeas_of(fbar);
  return rec.Finish(std::move(x), val, infeas, k, saddle);
}

}  // namespace subgrad

#endif  // SUBGRAD_SG_HPP_
