// Dense two-phase simplex (Bland's rule) used as ground truth for optimal
// values of the polyhedral benchmark families, plus an encoder turning such
// problems into LP form.
//
// Not meant for speed: tableau is dense and every pivot is O(rows * cols).

#ifndef SUBGRAD_LP_HPP_
#define SUBGRAD_LP_HPP_

#include <cmath>
#include <limits>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/LU>

#include "subgrad/problem.hpp"

namespace subgrad {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// minimize c.x + offset  s.t.  A_eq x = b_eq,  lower <= x <= upper.
struct LpProblem {
  Vector c;
  Matrix A_eq;
  Vector b_eq;
  Vector lower;
  Vector upper;
  double offset = 0.0;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kNumericalLimit };

inline std::string_view ToString(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "OPTIMAL";
    case LpStatus::kInfeasible: return "INFEASIBLE";
    case LpStatus::kUnbounded: return "UNBOUNDED";
    case LpStatus::kNumericalLimit: return "NUMERICAL_LIMIT";
  }
  return "UNKNOWN";
}

struct LpResult {
  LpStatus status = LpStatus::kNumericalLimit;
  Vector x;
  double value = std::numeric_limits<double>::quiet_NaN();
  // b.y + offset for the standard-form dual solution of the final basis.
  double dual_value = std::numeric_limits<double>::quiet_NaN();
  int pivots = 0;
};

struct LpOptions {
  double tol = 1e-9;
  int max_pivots = 1000000;
};

namespace detail {

// Maps one original variable onto nonnegative standard-form columns:
// x = offset + sign * x_pos - x_neg (x_neg only for free variables).
struct ColumnMap {
  double offset = 0.0;
  double sign = 1.0;
  int pos = -1;
  int neg = -1;
};

class Tableau {
 public:
  // Rows 0..rows-1 hold B^-1 [A | b]; the last column is the rhs.
  Tableau(Matrix body, std::vector<int> basis)
      : t_(std::move(body)), basis_(std::move(basis)) {}

  int rows() const { return static_cast<int>(t_.rows()); }
  int cols() const { return static_cast<int>(t_.cols()) - 1; }
  const std::vector<int>& basis() const { return basis_; }
  double rhs(int r) const { return t_(r, cols()); }
  double at(int r, int c) const { return t_(r, c); }

  void Pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    for (int i = 0; i < rows(); ++i) {
      if (i != r && t_(i, c) != 0.0) t_.row(i) -= t_(i, c) * t_.row(r);
    }
    basis_[r] = c;
  }

  void DropRow(int r) {
    Matrix next(rows() - 1, t_.cols());
    next << t_.topRows(r), t_.bottomRows(rows() - r - 1);
    t_ = std::move(next);
    basis_.erase(basis_.begin() + r);
  }

  // Minimizes cost.x over columns with allowed[c]. Bland's rule: lowest
  // improving column enters; ratio ties go to the lowest basic index.
  LpStatus Optimize(const Vector& cost, const std::vector<bool>& allowed,
                    const LpOptions& opt, int& pivots) {
    while (true) {
      Vector cb(rows());
      for (int r = 0; r < rows(); ++r) cb[r] = cost[basis_[r]];
      int enter = -1;
      for (int c = 0; c < cols(); ++c) {
        if (!allowed[c]) continue;
        const double reduced = cost[c] - cb.dot(t_.col(c).head(rows()));
        if (reduced < -opt.tol) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return LpStatus::kOptimal;
      int leave = -1;
      double best = kInf;
      for (int r = 0; r < rows(); ++r) {
        const double a = t_(r, enter);
        if (a <= opt.tol) continue;
        const double ratio = rhs(r) / a;
        if (ratio < best - opt.tol ||
            (ratio <= best + opt.tol && leave >= 0 && basis_[r] < basis_[leave])) {
          if (ratio < best) best = ratio;
          leave = r;
        }
      }
      if (leave < 0) return LpStatus::kUnbounded;
      if (++pivots > opt.max_pivots) return LpStatus::kNumericalLimit;
      Pivot(leave, enter);
    }
  }

 private:
  Matrix t_;
  std::vector<int> basis_;
};

}  // namespace detail

inline LpResult LpSolveSmall(const LpProblem& lp, const LpOptions& opt = {}) {
  const int n = static_cast<int>(lp.c.size());
  if (lp.A_eq.cols() != n || lp.A_eq.rows() != lp.b_eq.size() ||
      lp.lower.size() != n || lp.upper.size() != n) {
    throw ConfigError("LP dimensions are inconsistent");
  }
  for (int j = 0; j < n; ++j) {
    if (lp.lower[j] > lp.upper[j]) throw ConfigError("LP bound lower > upper");
  }

  // Standard form: min cs.y s.t. As y = bs, y >= 0.
  std::vector<detail::ColumnMap> map(n);
  int ncols = 0;
  std::vector<std::pair<int, double>> upper_rows;  // (column, span)
  for (int j = 0; j < n; ++j) {
    auto& cm = map[j];
    const bool lo = std::isfinite(lp.lower[j]);
    const bool hi = std::isfinite(lp.upper[j]);
    if (lo) {
      cm.offset = lp.lower[j];
      cm.pos = ncols++;
      if (hi) upper_rows.emplace_back(cm.pos, lp.upper[j] - lp.lower[j]);
    } else if (hi) {
      cm.offset = lp.upper[j];
      cm.sign = -1.0;
      cm.pos = ncols++;
    } else {
      cm.pos = ncols++;
      cm.neg = ncols++;
    }
  }
  const int bound_slack0 = ncols;
  ncols += static_cast<int>(upper_rows.size());
  const int m_eq = static_cast<int>(lp.A_eq.rows());
  const int nrows = m_eq + static_cast<int>(upper_rows.size());

  Matrix As = Matrix::Zero(nrows, ncols);
  Vector bs(nrows);
  Vector cs = Vector::Zero(ncols);
  double constant = lp.offset;
  for (int j = 0; j < n; ++j) {
    const auto& cm = map[j];
    constant += lp.c[j] * cm.offset;
    cs[cm.pos] = cm.sign * lp.c[j];
    if (cm.neg >= 0) cs[cm.neg] = -lp.c[j];
  }
  for (int r = 0; r < m_eq; ++r) {
    double rhs = lp.b_eq[r];
    for (int j = 0; j < n; ++j) {
      const double a = lp.A_eq(r, j);
      if (a == 0.0) continue;
      const auto& cm = map[j];
      rhs -= a * cm.offset;
      As(r, cm.pos) += cm.sign * a;
      if (cm.neg >= 0) As(r, cm.neg) -= a;
    }
    bs[r] = rhs;
  }
  for (std::size_t k = 0; k < upper_rows.size(); ++k) {
    const int r = m_eq + static_cast<int>(k);
    As(r, upper_rows[k].first) = 1.0;
    As(r, bound_slack0 + static_cast<int>(k)) = 1.0;
    bs[r] = upper_rows[k].second;
  }
  for (int r = 0; r < nrows; ++r) {
    if (bs[r] < 0.0) {
      As.row(r) *= -1.0;
      bs[r] = -bs[r];
    }
  }

  // Phase 1 over [As | I | bs].
  const int total = ncols + nrows;
  Matrix body(nrows, total + 1);
  body << As, Matrix::Identity(nrows, nrows), bs;
  std::vector<int> basis(nrows);
  for (int r = 0; r < nrows; ++r) basis[r] = ncols + r;
  detail::Tableau tab(std::move(body), std::move(basis));

  LpResult result;
  Vector phase1_cost = Vector::Zero(total);
  phase1_cost.tail(nrows).setOnes();
  std::vector<bool> allowed(total, true);
  LpStatus st = tab.Optimize(phase1_cost, allowed, opt, result.pivots);
  if (st == LpStatus::kNumericalLimit) {
    result.status = st;
    return result;
  }
  double infeasibility = 0.0;
  for (int r = 0; r < tab.rows(); ++r) {
    if (tab.basis()[r] >= ncols) infeasibility += tab.rhs(r);
  }
  if (infeasibility > opt.tol * (1.0 + bs.lpNorm<Eigen::Infinity>()) * 10.0) {
    result.status = LpStatus::kInfeasible;
    return result;
  }

  // Drive artificials out of the basis; rows where that fails are redundant.
  std::vector<int> kept_rows(nrows);
  for (int r = 0; r < nrows; ++r) kept_rows[r] = r;
  for (int r = tab.rows() - 1; r >= 0; --r) {
    if (tab.basis()[r] < ncols) continue;
    int col = -1;
    for (int c = 0; c < ncols; ++c) {
      if (std::abs(tab.at(r, c)) > opt.tol) {
        col = c;
        break;
      }
    }
    if (col >= 0) {
      tab.Pivot(r, col);
    } else {
      tab.DropRow(r);
      kept_rows.erase(kept_rows.begin() + r);
    }
  }

  Vector phase2_cost = Vector::Zero(total);
  phase2_cost.head(ncols) = cs;
  std::fill(allowed.begin() + ncols, allowed.end(), false);
  st = tab.Optimize(phase2_cost, allowed, opt, result.pivots);
  if (st != LpStatus::kOptimal) {
    result.status = st;
    return result;
  }

  Vector y = Vector::Zero(ncols);
  for (int r = 0; r < tab.rows(); ++r) y[tab.basis()[r]] = std::max(tab.rhs(r), 0.0);
  result.x.resize(n);
  for (int j = 0; j < n; ++j) {
    const auto& cm = map[j];
    double v = cm.offset + cm.sign * y[cm.pos];
    if (cm.neg >= 0) v -= y[cm.neg];
    result.x[j] = v;
  }
  result.value = lp.c.dot(result.x) + lp.offset;

  // Dual: B^T u = c_B over the kept rows.
  const int kr = tab.rows();
  Matrix B(kr, kr);
  Vector cb(kr), bk(kr);
  for (int r = 0; r < kr; ++r) {
    cb[r] = cs[tab.basis()[r]];
    bk[r] = bs[kept_rows[r]];
    for (int i = 0; i < kr; ++i) B(i, r) = As(kept_rows[i], tab.basis()[r]);
  }
  const Vector u = kr > 0 ? Vector(B.transpose().fullPivLu().solve(cb)) : Vector();
  result.dual_value = (kr > 0 ? bk.dot(u) : 0.0) + constant;
  result.status = LpStatus::kOptimal;
  return result;
}

// ---------------------------------------------------------------------------
// Polyhedral encoding

namespace detail {

// Linear part, constant, and the norm1 index ranges of an expression that is
// a (nested) sum of affine and norm1 nodes.
struct PolyhedralTerm {
  Vector linear;
  double constant = 0.0;
  std::vector<std::pair<int, int>> norm1_ranges;
};

inline bool Decompose(const ConvexOracle& f, PolyhedralTerm& out) {
  if (const auto* a = std::get_if<node::Affine>(&f.node())) {
    out.linear += a->c;
    out.constant += a->d;
    return true;
  }
  if (const auto* nr = std::get_if<node::Norm1>(&f.node())) {
    out.norm1_ranges.emplace_back(nr->offset, nr->count);
    return true;
  }
  if (const auto* s = std::get_if<node::Sum>(&f.node())) {
    for (const auto& part : s->parts) {
      if (!Decompose(part, out)) return false;
    }
    return true;
  }
  return false;
}

}  // namespace detail

// LP whose first n variables are the problem's x, valid when the objective
// and every inequality are sums of affine and norm1 terms. Each |x_i| term is
// split as x_i = p_i - q_i with cost p_i + q_i; each inequality gets a
// nonnegative slack. Returns nullopt for other problem shapes.
inline std::optional<LpProblem> EncodePolyhedral(const ConstrainedProblem& p) {
  const int n = p.n();
  std::vector<detail::PolyhedralTerm> terms(p.m() + 1);
  for (auto& t : terms) t.linear = Vector::Zero(n);
  if (!detail::Decompose(p.objective(), terms[0])) return std::nullopt;
  for (int i = 0; i < p.m(); ++i) {
    if (!detail::Decompose(p.ineq(i), terms[i + 1])) return std::nullopt;
  }

  int nvars = n;
  int nrows = p.l();
  for (std::size_t t = 0; t < terms.size(); ++t) {
    for (const auto& [off, cnt] : terms[t].norm1_ranges) {
      nvars += 2 * cnt;
      nrows += cnt;
    }
    if (t > 0) {
      ++nvars;
      ++nrows;
    }
  }

  LpProblem lp;
  lp.c = Vector::Zero(nvars);
  lp.A_eq = Matrix::Zero(nrows, nvars);
  lp.b_eq = Vector::Zero(nrows);
  lp.lower = Vector::Zero(nvars);
  lp.upper = Vector::Constant(nvars, kInf);
  lp.lower.head(n).setConstant(-kInf);

  if (p.l() > 0) {
    lp.A_eq.topLeftCorner(p.l(), n) = p.A();
    lp.b_eq.head(p.l()) = p.b();
  }
  int col = n;
  int row = p.l();
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const auto& term = terms[t];
    // Coefficients of this term in terms of LP variables.
    Vector coeff = Vector::Zero(nvars);
    coeff.head(n) = term.linear;
    for (const auto& [off, cnt] : term.norm1_ranges) {
      for (int i = 0; i < cnt; ++i) {
        const int pcol = col++, qcol = col++;
        lp.A_eq(row, off + i) = 1.0;
        lp.A_eq(row, pcol) = -1.0;
        lp.A_eq(row, qcol) = 1.0;
        ++row;
        coeff[pcol] = 1.0;
        coeff[qcol] = 1.0;
      }
    }
    if (t == 0) {
      lp.c = coeff;
      lp.offset = term.constant;
    } else {
      // coeff.v + constant + slack = 0
      const int slack = col++;
      lp.A_eq.row(row) = coeff.transpose();
      lp.A_eq(row, slack) = 1.0;
      lp.b_eq[row] = -term.constant;
      ++row;
    }
  }
  return lp;
}

}  // namespace subgrad

#endif  // SUBGRAD_LP_HPP_
