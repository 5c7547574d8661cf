// Solves  min x^2  s.t.  x = 1  with the primal-dual method and prints the
// last few trace rows.

#include <iostream>

#include "subgrad/subgrad.hpp"

int main() {
  using namespace subgrad;
  Matrix A(1, 1);
  A << 1.0;
  Vector b(1);
  b << 1.0;
  ConstrainedProblem problem(SqNorm(1, 0, 1), {}, A, b);

  SolverConfig cfg;
  cfg.K = 20000;
  cfg.s_exp = 2.0;
  cfg.trace_every = 5000;
  const SolveReport report = PdsSolve(problem, cfg);

  for (const auto& e : report.trace) {
    std::cout << "k=" << e.k << " val=" << e.val << " infeas=" << e.infeas << '\n';
  }
  std::cout << "x = " << report.x_out.transpose() << '\n';
  return 0;
}
