// Solver configuration and per-run reporting shared by all methods.

#ifndef SUBGRAD_REPORT_HPP_
#define SUBGRAD_REPORT_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "subgrad/oracle.hpp"

namespace subgrad {

struct SolverConfig {
  double eps = 1e-3;
  int K = 10000;
  // Penalty coefficient for PDS; defaults to 1/s_exp when unset.
  std::optional<double> rho;
  double s_exp = 2.0;
  double delta_exp = 0.5;
  std::uint64_t seed = 0;
  int trace_every = 10;
  // Starting point; zero when unset.
  std::optional<Vector> x0;
  std::optional<Vector> lambda0;
  std::optional<Vector> nu0;

  double EffectiveRho() const { return rho.value_or(1.0 / s_exp); }
};

inline void ValidateCommon(const SolverConfig& cfg) {
  if (!(cfg.eps > 0.0)) throw ConfigError("eps must be positive");
  if (cfg.K < 0) throw ConfigError("iteration count must be nonnegative");
  if (cfg.trace_every < 1) throw ConfigError("trace_every must be >= 1");
}

enum class SolveStatus { kCompleted, kSaddleTerminated, kNoEpsFeasible };

inline std::string_view ToString(SolveStatus s) {
  switch (s) {
    case SolveStatus::kCompleted: return "COMPLETED";
    case SolveStatus::kSaddleTerminated: return "SADDLE_TERMINATED";
    case SolveStatus::kNoEpsFeasible: return "NO_EPS_FEASIBLE";
  }
  return "UNKNOWN";
}

struct TraceEntry {
  int k = 0;
  double val = 0.0;
  double infeas = 0.0;
  double elapsed_s = 0.0;
};

struct SolveReport {
  // Thinned to every trace_every-th iteration plus the last one.
  std::vector<TraceEntry> trace;
  // Minimum objective over all eps-feasible reported iterates.
  std::optional<double> p_eps;
  std::optional<int> p_eps_index;
  Vector x_out;
  SolveStatus status = SolveStatus::kCompleted;
  int iterations = 0;
  // Value and infeasibility of x_out.
  double final_val = std::numeric_limits<double>::quiet_NaN();
  double final_infeas = std::numeric_limits<double>::quiet_NaN();
  double elapsed_s = 0.0;
  // PDS only, when a reference saddle point is supplied: the iterate index
  // minimizing T^(i).(z^(i) - z*).
  std::optional<int> best_t_index;
};

namespace detail {

// Collects per-iteration (val, infeas) pairs at full resolution for p_eps and
// thins them into the stored trace.
class TraceRecorder {
 public:
  TraceRecorder(double eps, int trace_every, int K)
      : eps_(eps), every_(trace_every), K_(K),
        start_(std::chrono::steady_clock::now()) {}

  double Elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

  // Counts toward p_eps but is not written to the trace (e.g. x^(0)).
  void Observe(int k, double val, double infeas) {
    if (infeas <= eps_ && (!p_eps_ || val < *p_eps_)) {
      p_eps_ = val;
      p_eps_index_ = k;
    }
  }

  void Record(int k, double val, double infeas, bool force = false) {
    Observe(k, val, infeas);
    if (force || k % every_ == 0 || k == K_) {
      if (report_.trace.empty() || report_.trace.back().k < k) {
        report_.trace.push_back({k, val, infeas, Elapsed()});
      }
    }
  }

  SolveReport Finish(Vector x_out, double final_val, double final_infeas,
                     int iterations, bool saddle) {
    report_.elapsed_s = Elapsed();
    report_.x_out = std::move(x_out);
    report_.final_val = final_val;
    report_.final_infeas = final_infeas;
    report_.iterations = iterations;
    report_.p_eps = p_eps_;
    report_.p_eps_index = p_eps_index_;
    if (saddle) {
      report_.status = SolveStatus::kSaddleTerminated;
    } else if (!p_eps_) {
      report_.status = SolveStatus::kNoEpsFeasible;
    } else {
      report_.status = SolveStatus::kCompleted;
    }
    return std::move(report_);
  }

 private:
  double eps_;
  int every_;
  int K_;
  std::chrono::steady_clock::time_point start_;
  std::optional<double> p_eps_;
  std::optional<int> p_eps_index_;
  SolveReport report_;
};

struct NoObserver {
  template <class... Args>
  void operator()(Args&&...) const {}
};

}  // namespace detail

// |val - val*| / (1 + max{|val*|, |val|})
inline double RelativeGap(double val, double val_star) {
  return std::abs(val - val_star) /
         (1.0 + std::max(std::abs(val_star), std::abs(val)));
}

}  // namespace subgrad

#endif  // SUBGRAD_REPORT_HPP_
