// Randomized check of the subgradient inequality
//   f(y) >= f(x) + g(x).(y - x)
// on point pairs drawn uniformly from a ball.

#ifndef SUBGRAD_VALIDATE_HPP_
#define SUBGRAD_VALIDATE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>

#include "subgrad/oracle.hpp"
#include "subgrad/testbeds.hpp"

namespace subgrad {

struct ValidationReport {
  int pairs_checked = 0;
  int pairs_skipped = 0;
  // Pairs with f(x) + g.(y - x) - f(y) > 1e-9 (1 + |f(y)|).
  int violations = 0;
  // Largest f(x) + g.(y - x) - f(y) seen; <= 0 up to rounding for a valid oracle.
  double worst_violation = -std::numeric_limits<double>::infinity();
  bool subgrad_finite = true;

  bool ok() const { return violations == 0 && subgrad_finite; }
};

struct ValidationOptions {
  int n_pairs = 1000;
  double radius = 1.0;
  std::uint64_t seed = 0;
  // Ball center; the origin when empty.
  Vector center;
  // Pairs where either point fails this predicate are skipped.
  std::function<bool(const Vector&)> in_domain;
  double rel_tol = 1e-9;
};

namespace detail {

inline Vector SampleBall(InstanceRng& rng, const Vector& center, double radius) {
  const int n = static_cast<int>(center.size());
  Vector d(n);
  for (int i = 0; i < n; i += 2) {
    // Box-Muller
    const double u1 = 1.0 - rng.Uniform01();
    const double u2 = rng.Uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    d[i] = r * std::cos(2.0 * std::numbers::pi * u2);
    if (i + 1 < n) d[i + 1] = r * std::sin(2.0 * std::numbers::pi * u2);
  }
  const double norm = d.norm();
  if (norm == 0.0) return center;
  const double scale = radius * std::pow(rng.Uniform01(), 1.0 / std::max(n, 1));
  return center + (scale / norm) * d;
}

}  // namespace detail

inline ValidationReport ValidateSubgradient(const ConvexOracle& f,
                                            const ValidationOptions& opt = {}) {
  if (!(opt.radius > 0.0)) throw ConfigError("validation radius must be positive");
  const Vector center = opt.center.size() == f.dim()
                            ? opt.center
                            : Vector(Vector::Zero(f.dim()));
  InstanceRng rng(opt.seed);
  ValidationReport rep;
  for (int i = 0; i < opt.n_pairs; ++i) {
    const Vector x = detail::SampleBall(rng, center, opt.radius);
    const Vector y = detail::SampleBall(rng, center, opt.radius);
    if (opt.in_domain && (!opt.in_domain(x) || !opt.in_domain(y))) {
      ++rep.pairs_skipped;
      continue;
    }
    const Evaluation ex = f(x);
    const double fy = f.Value(y);
    if (!ex.subgrad.allFinite() || ex.subgrad.size() != f.dim()) {
      rep.subgrad_finite = false;
    }
    const double gap = ex.value + ex.subgrad.dot(y - x) - fy;
    rep.worst_violation = std::max(rep.worst_violation, gap);
    if (gap > opt.rel_tol * (1.0 + std::abs(fy))) ++rep.violations;
    ++rep.pairs_checked;
  }
  return rep;
}

// Both points of every pair keep x_index + shift at or above the floor.
inline std::function<bool(const Vector&)> LogBarrierDomain(int index,
                                                           double shift = 1.0) {
  return [index, shift](const Vector& x) {
    return x[index] + shift >= kLogBarrierFloor;
  };
}

}  // namespace subgrad

#endif  // SUBGRAD_VALIDATE_HPP_
