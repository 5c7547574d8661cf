// Constrained convex program
//
//   minimize f0(x)  s.t.  f_i(x) <= 0 (i = 1..m),  A x = b  (l rows)
//
// plus the feasibility measures and the single-constraint reformulation
// used by the SG and single-multiplier DSG solvers.

#ifndef SUBGRAD_PROBLEM_HPP_
#define SUBGRAD_PROBLEM_HPP_

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "subgrad/oracle.hpp"

namespace subgrad {

class ConstrainedProblem {
 public:
  ConstrainedProblem(ConvexOracle objective, std::vector<ConvexOracle> ineq,
                     Matrix A, Vector b)
      : f0_(std::move(objective)),
        ineq_(std::move(ineq)),
        A_(std::move(A)),
        b_(std::move(b)) {
    const int n = f0_.dim();
    for (const auto& f : ineq_) {
      if (f.dim() != n) throw ConfigError("inequality oracle dimension mismatch");
    }
    if (A_.rows() == 0) A_.resize(0, n);
    if (A_.cols() != n) throw ConfigError("equality matrix has wrong column count");
    if (b_.size() != A_.rows()) throw ConfigError("equality rhs length mismatch");
    if (!A_.allFinite() || !b_.allFinite()) {
      throw ConfigError("equality data must be finite");
    }
  }

  // Problem without equality constraints.
  ConstrainedProblem(ConvexOracle objective, std::vector<ConvexOracle> ineq)
      : ConstrainedProblem(objective, std::move(ineq),
                           Matrix(0, objective.dim()), Vector(0)) {}

  int n() const { return f0_.dim(); }
  int m() const { return static_cast<int>(ineq_.size()); }
  int l() const { return static_cast<int>(A_.rows()); }

  const ConvexOracle& objective() const { return f0_; }
  const std::vector<ConvexOracle>& ineq() const { return ineq_; }
  const ConvexOracle& ineq(int i) const { return ineq_[i]; }
  const Matrix& A() const { return A_; }
  const Vector& b() const { return b_; }

  Vector EqualityResidual(const Vector& x) const {
    CheckPoint(x);
    return A_ * x - b_;
  }

  void CheckPoint(const Vector& x) const {
    if (x.size() != n()) {
      throw std::invalid_argument("point has dimension " +
                                  std::to_string(x.size()) + ", problem has " +
                                  std::to_string(n()));
    }
  }

 private:
  ConvexOracle f0_;
  std::vector<ConvexOracle> ineq_;
  Matrix A_;
  Vector b_;
};

// z = (x, lambda, nu), stored as one contiguous vector of length n + m + l.
class DualPoint {
 public:
  DualPoint(int n, int m, int l) : n_(n), m_(m), l_(l), z_(Vector::Zero(n + m + l)) {}
  explicit DualPoint(const ConstrainedProblem& p) : DualPoint(p.n(), p.m(), p.l()) {}
  DualPoint(Vector x, Vector lambda, Vector nu)
      : n_(static_cast<int>(x.size())),
        m_(static_cast<int>(lambda.size())),
        l_(static_cast<int>(nu.size())),
        z_(n_ + m_ + l_) {
    z_ << x, lambda, nu;
  }

  int n() const { return n_; }
  int m() const { return m_; }
  int l() const { return l_; }

  auto x() { return z_.head(n_); }
  auto x() const { return z_.head(n_); }
  auto lambda() { return z_.segment(n_, m_); }
  auto lambda() const { return z_.segment(n_, m_); }
  auto nu() { return z_.tail(l_); }
  auto nu() const { return z_.tail(l_); }

  Vector& stacked() { return z_; }
  const Vector& stacked() const { return z_; }

  bool Matches(const ConstrainedProblem& p) const {
    return n_ == p.n() && m_ == p.m() && l_ == p.l();
  }

 private:
  int n_, m_, l_;
  Vector z_;
};

// F(x) = (max{f_1(x), 0}, ..., max{f_m(x), 0}).
inline Vector ConstraintViolations(const ConstrainedProblem& p, const Vector& x) {
  p.CheckPoint(x);
  Vector F(p.m());
  for (int i = 0; i < p.m(); ++i) F[i] = std::max(p.ineq(i).Value(x), 0.0);
  return F;
}

// ||F(x)||_2 + ||Ax - b||_2.
inline double InfeasibilityNorm(const ConstrainedProblem& p, const Vector& x) {
  return ConstraintViolations(p, x).norm() + p.EqualityResidual(x).norm();
}

// max{f_1, ..., f_m, |a_1.x - b_1|, ..., |a_l.x - b_l|}
inline ConvexOracle MaxConstraintOracle(const ConstrainedProblem& p) {
  if (p.m() + p.l() == 0) {
    throw ConfigError("max-constraint function needs at least one constraint");
  }
  std::vector<ConvexOracle> parts = p.ineq();
  for (int j = 0; j < p.l(); ++j) {
    parts.push_back(AbsAffine(p.A().row(j).transpose(), p.b()[j]));
  }
  return Max(std::move(parts));
}

// Same objective, single constraint max-constraint(x) <= 0, no equalities.
inline ConstrainedProblem ReformulateMax(const ConstrainedProblem& p) {
  return ConstrainedProblem(p.objective(), {MaxConstraintOracle(p)});
}

}  // namespace subgrad

#endif  // SUBGRAD_PROBLEM_HPP_
