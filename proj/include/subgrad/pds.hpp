// Penalized primal-dual subgradient method.
//
// Works on the Lagrangian of the penalized problem
//
//   L_rho(x, lambda, nu) = f0 + lambda.F + nu.(Ax - b)
//                          + rho (||F||^s + ||Ax - b||^s),   s in [1, 2],
//
// stepping z <- z - alpha_k T(z), T = (d_x L_rho, -F(x), b - Ax), with the
// normalized step alpha_k = gamma_k / ||T||, gamma_k = (k+1)^(-1 + delta/2).
// s = 2 is the classical augmented-Lagrangian primal-dual iteration.

#ifndef SUBGRAD_PDS_HPP_
#define SUBGRAD_PDS_HPP_

#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "subgrad/dsg.hpp"
#include "subgrad/problem.hpp"
#include "subgrad/report.hpp"

namespace subgrad {

struct PdsState {
  DualPoint z;
  int k = 0;
  double rho = 1.0;
  double s_exp = 2.0;
  double delta_exp = 0.5;

  static PdsState Initial(const ConstrainedProblem& p, const SolverConfig& cfg);
};

inline void ValidatePdsParameters(double rho, double s_exp, double delta_exp) {
  if (!(rho > 0.0)) throw ConfigError("rho must be positive");
  if (!(s_exp >= 1.0 && s_exp <= 2.0)) throw ConfigError("s must lie in [1, 2]");
  if (!(delta_exp > 0.0 && delta_exp < 1.0)) {
    throw ConfigError("delta must lie in (0, 1)");
  }
}

inline PdsState PdsState::Initial(const ConstrainedProblem& p,
                                  const SolverConfig& cfg) {
  const double rho = cfg.EffectiveRho();
  ValidatePdsParameters(rho, cfg.s_exp, cfg.delta_exp);
  return PdsState{detail::StartingPoint(p, cfg), 0, rho, cfg.s_exp,
                  cfg.delta_exp};
}

// gamma_k = (k + 1)^(-1 + delta/2)
inline double PdsGamma(int k, double delta_exp) {
  if (k < 0) throw std::invalid_argument("step index must be >= 0");
  if (!(delta_exp > 0.0 && delta_exp < 1.0)) {
    throw ConfigError("delta must lie in (0, 1)");
  }
  return std::pow(static_cast<double>(k) + 1.0, -1.0 + 0.5 * delta_exp);
}

namespace detail {

struct PdsEval {
  Vector T;
  double f0 = 0.0;
  double infeas = 0.0;
};

inline PdsEval EvaluatePds(const ConstrainedProblem& p, const DualPoint& z,
                           double rho, double s_exp) {
  if (!z.Matches(p)) throw std::invalid_argument("dual point does not match problem");
  const int n = p.n(), m = p.m(), l = p.l();
  const Vector x = z.x();

  PdsEval out;
  const Evaluation obj = p.objective()(x);
  out.f0 = obj.value;

  Vector F = Vector::Zero(m);
  std::vector<Vector> g(m);
  for (int i = 0; i < m; ++i) {
    Evaluation e = p.ineq(i)(x);
    if (e.value > 0.0) {
      F[i] = e.value;
      g[i] = std::move(e.subgrad);
    }
  }
  const Vector r = p.A() * x - p.b();
  const Vector pen_F = NormPowerSubgrad(F, s_exp);
  const Vector pen_r = NormPowerSubgrad(r, s_exp);

  out.T.resize(n + m + l);
  auto tx = out.T.head(n);
  tx = obj.subgrad;
  for (int i = 0; i < m; ++i) {
    if (F[i] > 0.0) tx += (z.lambda()[i] + rho * pen_F[i]) * g[i];
  }
  if (l > 0) tx.noalias() += p.A().transpose() * (z.nu() + rho * pen_r);
  out.T.segment(n, m) = -F;
  out.T.tail(l) = -r;
  out.infeas = F.norm() + r.norm();
  return out;
}

}  // namespace detail

// One element of T_rho(z).
inline Vector PdsT(const ConstrainedProblem& p, const DualPoint& z, double rho,
                   double s_exp) {
  if (!(s_exp >= 1.0 && s_exp <= 2.0)) throw ConfigError("s must lie in [1, 2]");
  return detail::EvaluatePds(p, z, rho, s_exp).T;
}

// z <- z - gamma_k T / ||T||. Returns false, leaving the state untouched,
// when ||T|| <= kSaddleTolerance.
[[nodiscard]] inline bool PdsStep(const ConstrainedProblem& p, PdsState& st) {
  const Vector T = PdsT(p, st.z, st.rho, st.s_exp);
  const double tnorm = T.norm();
  if (tnorm <= kSaddleTolerance) return false;
  st.z.stacked() -= (PdsGamma(st.k, st.delta_exp) / tnorm) * T;
  ++st.k;
  return true;
}

// Runs K iterations. Trace entry k holds f0(x^(k)) and ||F(x^(k))|| +
// ||Ax^(k) - b||; x^(0) counts toward p_eps but is not traced. When a
// reference saddle point `z_star` is given, the report also carries the
// index minimizing T^(i).(z^(i) - z*).
// `observer(k, state)` sees every iterate including the initial one.
template <class Observer = detail::NoObserver>
SolveReport PdsSolve(const ConstrainedProblem& p, const SolverConfig& cfg,
                     Observer&& observer = {},
                     const std::optional<DualPoint>& z_star = std::nullopt) {
  ValidateCommon(cfg);
  PdsState st = PdsState::Initial(p, cfg);
  if (z_star && !z_star->Matches(p)) {
    throw ConfigError("reference saddle point does not match problem");
  }

  detail::TraceRecorder rec(cfg.eps, cfg.trace_every, cfg.K);
  double best_t = std::numeric_limits<double>::infinity();
  std::optional<int> best_t_index;
  bool saddle = false;
  detail::PdsEval ev = detail::EvaluatePds(p, st.z, st.rho, st.s_exp);
  rec.Observe(0, ev.f0, ev.infeas);
  observer(0, std::as_const(st));

  while (true) {
    if (z_star && st.k >= 1) {
      const double t = ev.T.dot(st.z.stacked() - z_star->stacked());
      if (t < best_t) {
        best_t = t;
        best_t_index = st.k;
      }
    }
    if (st.k >= cfg.K) break;
    const double tnorm = ev.T.norm();
    if (tnorm <= kSaddleTolerance) {
      saddle = true;
      break;
    }
    st.z.stacked() -= (PdsGamma(st.k, st.delta_exp) / tnorm) * ev.T;
    ++st.k;
    ev = detail::EvaluatePds(p, st.z, st.rho, st.s_exp);
    rec.Record(st.k, ev.f0, ev.infeas);
    observer(st.k, std::as_const(st));
  }
  if (saddle && st.k > 0) rec.Record(st.k, ev.f0, ev.infeas, /*force=*/true);
  SolveReport report =
      rec.Finish(Vector(st.z.x()), ev.f0, ev.infeas, st.k, saddle);
  report.best_t_index = best_t_index;
  return report;
}

}  // namespace subgrad

#endif  // SUBGRAD_PDS_HPP_
