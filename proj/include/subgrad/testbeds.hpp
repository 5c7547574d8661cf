// Generators for the benchmark problem families:
//   case 1  min c.x  s.t. ||x||_1 <= 1, Ax = b
//   case 2  min c.x  s.t. x in [-1,1]^n, max{-log(x_1 + 1), x_2} <= 1, Ax = b
//   lad     min ||Dx - w||_1 via slack y = Dx - w
//   svm     soft-margin hinge loss with tau = Zw - ue as equality constraints
//
// Random draws come from std::mt19937_64 seeded through splitmix64, with
// doubles formed from the top 53 bits of each output. Both pieces are fully
// specified, so an instance is bit-identical on every platform for a given
// (arguments, seed).

#ifndef SUBGRAD_TESTBEDS_HPP_
#define SUBGRAD_TESTBEDS_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "subgrad/problem.hpp"

namespace subgrad {

struct TestInstance {
  ConstrainedProblem problem;
  std::string label;
  std::uint64_t seed = 0;
  std::map<std::string, double> meta;
  // A feasible point, when the generator knows one.
  std::optional<Vector> anchor;
};

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class InstanceRng {
 public:
  explicit InstanceRng(std::uint64_t seed) : engine_(SplitMix64(seed)) {}

  // Uniform on [0, 1).
  double Uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }

  Vector UniformVector(int n, double lo, double hi) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = Uniform(lo, hi);
    return v;
  }

  // Row-major fill so the draw order does not depend on storage order.
  Matrix UniformMatrix(int rows, int cols, double lo, double hi) {
    Matrix M(rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) M(r, c) = Uniform(lo, hi);
    }
    return M;
  }

 private:
  std::mt19937_64 engine_;
};

// Number of equality rows used by the random families.
inline int RandomEqualityRows(int n) { return (n + 6) / 7; }

// Case-2 domain constraint max{-log(x_1 + 1), x_2} - 1.
inline ConvexOracle LogMaxConstraint(int n) {
  Vector e2 = Vector::Zero(n);
  e2[1] = 1.0;
  return Shift(Max({LogBarrier(n, 0, 1.0), Affine(std::move(e2))}), -1.0);
}

inline TestInstance GenerateRandom(int case_id, int n, std::uint64_t seed) {
  if (case_id != 1 && case_id != 2) throw ConfigError("random case must be 1 or 2");
  if (n < 2) throw ConfigError("random instances need n >= 2");
  InstanceRng rng(seed);
  const int l = RandomEqualityRows(n);
  Vector c = rng.UniformVector(n, -1.0, 1.0);
  Matrix A = rng.UniformMatrix(l, n, -1.0, 1.0);

  Vector anchor(n);
  std::vector<ConvexOracle> ineq;
  if (case_id == 1) {
    // Uniform l1 direction, radius U^(1/n).
    Vector u = rng.UniformVector(n, -1.0, 1.0);
    const double r = std::pow(rng.Uniform01(), 1.0 / n);
    anchor = (r / u.lpNorm<1>()) * u;
    ineq.push_back(Shift(Norm1(n), -1.0));
  } else {
    const ConvexOracle domain = LogMaxConstraint(n);
    constexpr int kMaxDraws = 1000000;
    int draws = 0;
    do {
      if (++draws > kMaxDraws) throw std::runtime_error("case-2 sampling failed");
      anchor = rng.UniformVector(n, -1.0, 1.0);
    } while (domain.Value(anchor) > 0.0);
    for (int i = 0; i < n; ++i) {
      Vector e = Vector::Zero(n);
      e[i] = 1.0;
      ineq.push_back(Affine(e, -1.0));
      ineq.push_back(Affine(-e, -1.0));
    }
    ineq.push_back(domain);
  }
  Vector b = A * anchor;

  TestInstance inst{
      ConstrainedProblem(Affine(std::move(c)), std::move(ineq), std::move(A),
                         std::move(b)),
      "case" + std::to_string(case_id) + "_n" + std::to_string(n),
      seed,
      {{"case", case_id}, {"n", n}},
      std::move(anchor)};
  return inst;
}

// Variables (x, y), x in R^nbar, y in R^{2 nbar}; min ||y||_1 s.t. y - Dx = -w.
inline TestInstance BuildLad(int nbar, std::uint64_t seed) {
  if (nbar < 1) throw ConfigError("LAD needs nbar >= 1");
  InstanceRng rng(seed);
  const int rows = 2 * nbar;
  const int n = nbar + rows;
  Matrix D = rng.UniformMatrix(rows, nbar, -1.0, 1.0);
  Vector w = rng.UniformVector(rows, -1.0, 1.0);

  Matrix A(rows, n);
  A << -D, Matrix::Identity(rows, rows);
  Vector anchor(n);
  anchor << Vector::Zero(nbar), -w;

  TestInstance inst{
      ConstrainedProblem(Norm1(n, nbar, rows), {}, std::move(A), -w),
      "lad_nbar" + std::to_string(nbar),
      seed,
      {{"nbar", nbar}},
      std::move(anchor)};
  return inst;
}

// Variables (w, u, tau) with N = 200 nbar samples; the first floor(N/2)
// samples are drawn from [0,1]^nbar with label +1, the rest from
// [-1,0]^nbar with label -1.
inline TestInstance BuildSvm(int nbar, std::uint64_t seed) {
  if (nbar < 1) throw ConfigError("SVM needs nbar >= 1");
  InstanceRng rng(seed);
  const int N = 200 * nbar;
  const int n = nbar + 1 + N;
  Matrix Z(N, nbar);
  Vector labels(N);
  for (int i = 0; i < N; ++i) {
    const bool positive = i < N / 2;
    labels[i] = positive ? 1.0 : -1.0;
    for (int j = 0; j < nbar; ++j) {
      Z(i, j) = positive ? rng.Uniform(0.0, 1.0) : rng.Uniform(-1.0, 0.0);
    }
  }

  Matrix A(N, n);
  A << -Z, Vector::Ones(N), Matrix::Identity(N, N);
  ConvexOracle objective = Sum({HingeSum(n, nbar + 1, std::move(labels), 1.0 / N),
                                SqNorm(n, 0, nbar, 0.5)});

  TestInstance inst{
      ConstrainedProblem(std::move(objective), {}, std::move(A), Vector::Zero(N)),
      "svm_nbar" + std::to_string(nbar),
      seed,
      {{"nbar", nbar}, {"N", N}},
      Vector::Zero(n)};
  return inst;
}

}  // namespace subgrad

#endif  // SUBGRAD_TESTBEDS_HPP_
