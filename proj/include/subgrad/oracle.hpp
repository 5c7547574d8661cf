// Value-plus-subgradient oracles for convex functions on R^n and the small
// calculus used to assemble objectives and constraints from them.
//
// An oracle is an immutable expression tree. Each node computes the function
// value and one fixed element of the subdifferential at a point. Selections
// at kinks are deterministic:
//   max          lowest-index part attaining the maximum
//   abs_affine   sign(0) = +1
//   pos          zero vector whenever the inner value is <= 0
//   norm1        sign(0) = +1 per coordinate
//   hinge_sum    zero contribution on the hinge
// Trees can be serialized (see io.hpp) unless they contain a Custom node.

#ifndef SUBGRAD_ORACLE_HPP_
#define SUBGRAD_ORACLE_HPP_

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace subgrad {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Raised for malformed problem or solver setups (empty max, bad dimensions,
// parameters out of range).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Evaluation {
  double value = 0.0;
  Vector subgrad;
};

// Smallest admissible argument of the log barrier before the steep linear
// extension takes over.
inline constexpr double kLogBarrierFloor = 1e-12;

class ConvexOracle;

namespace node {

struct Affine {
  Vector c;
  double d = 0.0;
};

struct AbsAffine {
  Vector a;
  double b = 0.0;
};

struct Max {
  std::vector<ConvexOracle> parts;
};

struct Sum {
  std::vector<ConvexOracle> parts;
};

struct PositivePart {
  std::shared_ptr<const ConvexOracle> arg;
};

// sum_{i in [offset, offset+count)} |x_i|
struct Norm1 {
  int offset = 0;
  int count = 0;
};

// scale * ||x_{[offset, offset+count)}||_2^2
struct SqNorm {
  int offset = 0;
  int count = 0;
  double scale = 1.0;
};

// scale * sum_i max{0, 1 - labels_i * x_{offset+i}}
struct HingeSum {
  int offset = 0;
  Vector labels;
  double scale = 1.0;
};

// -log(x_index + shift), extended linearly below kLogBarrierFloor.
struct LogBarrier {
  int index = 0;
  double shift = 1.0;
};

struct Custom {
  std::function<Evaluation(const Vector&)> eval;
  std::string name;
};

}  // namespace node

using Node = std::variant<node::Affine, node::AbsAffine, node::Max, node::Sum,
                          node::PositivePart, node::Norm1, node::SqNorm,
                          node::HingeSum, node::LogBarrier, node::Custom>;

class ConvexOracle {
 public:
  ConvexOracle(int dim, Node node)
      : dim_(dim), node_(std::make_shared<const Node>(std::move(node))) {
    if (dim < 0) throw ConfigError("oracle dimension must be nonnegative");
  }

  int dim() const { return dim_; }
  const Node& node() const { return *node_; }

  Evaluation operator()(const Vector& x) const {
    if (x.size() != dim_) {
      throw std::invalid_argument("oracle evaluated at point of dimension " +
                                  std::to_string(x.size()) + ", expected " +
                                  std::to_string(dim_));
    }
    return Evaluate(x);
  }

  double Value(const Vector& x) const { return (*this)(x).value; }

 private:
  Evaluation Evaluate(const Vector& x) const;

  int dim_;
  std::shared_ptr<const Node> node_;
};

namespace detail {

inline void CheckRange(int dim, int offset, int count, const char* what) {
  if (offset < 0 || count < 0 || offset + count > dim) {
    throw ConfigError(std::string(what) + ": index range out of bounds");
  }
}

inline void CheckFinite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw ConfigError(std::string(what) + ": non-finite entry");
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace detail

inline Evaluation ConvexOracle::Evaluate(const Vector& x) const {
  const int n = dim_;
  return std::visit(
      detail::Overloaded{
          [&](const node::Affine& f) {
            return Evaluation{f.c.dot(x) + f.d, f.c};
          },
          [&](const node::AbsAffine& f) {
            const double r = f.a.dot(x) - f.b;
            return r >= 0.0 ? Evaluation{r, f.a} : Evaluation{-r, -f.a};
          },
          [&](const node::Max& f) {
            Evaluation best = f.parts.front()(x);
            for (std::size_t i = 1; i < f.parts.size(); ++i) {
              Evaluation e = f.parts[i](x);
              if (e.value > best.value) best = std::move(e);
            }
            return best;
          },
          [&](const node::Sum& f) {
            Evaluation total{0.0, Vector::Zero(n)};
            for (const auto& part : f.parts) {
              Evaluation e = part(x);
              total.value += e.value;
              total.subgrad += e.subgrad;
            }
            return total;
          },
          [&](const node::PositivePart& f) {
            Evaluation e = (*f.arg)(x);
            if (e.value > 0.0) return e;
            return Evaluation{0.0, Vector::Zero(n)};
          },
          [&](const node::Norm1& f) {
            Evaluation e{0.0, Vector::Zero(n)};
            for (int i = f.offset; i < f.offset + f.count; ++i) {
              e.value += std::abs(x[i]);
              e.subgrad[i] = x[i] >= 0.0 ? 1.0 : -1.0;
            }
            return e;
          },
          [&](const node::SqNorm& f) {
            Evaluation e{0.0, Vector::Zero(n)};
            const auto seg = x.segment(f.offset, f.count);
            e.value = f.scale * seg.squaredNorm();
            e.subgrad.segment(f.offset, f.count) = 2.0 * f.scale * seg;
            return e;
          },
          [&](const node::HingeSum& f) {
            Evaluation e{0.0, Vector::Zero(n)};
            for (int i = 0; i < f.labels.size(); ++i) {
              const double margin = 1.0 - f.labels[i] * x[f.offset + i];
              if (margin > 0.0) {
                e.value += f.scale * margin;
                e.subgrad[f.offset + i] = -f.scale * f.labels[i];
              }
            }
            return e;
          },
          [&](const node::LogBarrier& f) {
            Evaluation e{0.0, Vector::Zero(n)};
            const double t = x[f.index] + f.shift;
            if (t >= kLogBarrierFloor) {
              e.value = -std::log(t);
              e.subgrad[f.index] = -1.0 / t;
            } else {
              e.value = -std::log(kLogBarrierFloor);
              e.subgrad[f.index] = -1.0 / kLogBarrierFloor;
            }
            return e;
          },
          [&](const node::Custom& f) {
            Evaluation e = f.eval(x);
            if (e.subgrad.size() != n) {
              throw std::logic_error("custom oracle '" + f.name +
                                     "' returned subgradient of wrong length");
            }
            return e;
          },
      },
      *node_);
}

// ---------------------------------------------------------------------------
// Builders

inline ConvexOracle Affine(Vector c, double d = 0.0) {
  detail::CheckFinite(c, "affine");
  const int n = static_cast<int>(c.size());
  return ConvexOracle(n, node::Affine{std::move(c), d});
}

inline ConvexOracle Constant(int dim, double d) {
  return Affine(Vector::Zero(dim), d);
}

// |a.x - b|
inline ConvexOracle AbsAffine(Vector a, double b) {
  detail::CheckFinite(a, "abs_affine");
  const int n = static_cast<int>(a.size());
  return ConvexOracle(n, node::AbsAffine{std::move(a), b});
}

inline ConvexOracle Max(std::vector<ConvexOracle> parts) {
  if (parts.empty()) throw ConfigError("max of an empty list of oracles");
  const int n = parts.front().dim();
  for (const auto& p : parts) {
    if (p.dim() != n) throw ConfigError("max: parts differ in dimension");
  }
  return ConvexOracle(n, node::Max{std::move(parts)});
}

inline ConvexOracle Sum(std::vector<ConvexOracle> parts) {
  if (parts.empty()) throw ConfigError("sum of an empty list of oracles");
  const int n = parts.front().dim();
  for (const auto& p : parts) {
    if (p.dim() != n) throw ConfigError("sum: parts differ in dimension");
  }
  return ConvexOracle(n, node::Sum{std::move(parts)});
}

// f + d
inline ConvexOracle Shift(ConvexOracle f, double d) {
  const int n = f.dim();
  return Sum({std::move(f), Constant(n, d)});
}

// max{f, 0}
inline ConvexOracle PositivePart(ConvexOracle f) {
  const int n = f.dim();
  return ConvexOracle(
      n, node::PositivePart{std::make_shared<const ConvexOracle>(std::move(f))});
}

inline ConvexOracle Norm1(int dim, int offset, int count) {
  detail::CheckRange(dim, offset, count, "norm1");
  return ConvexOracle(dim, node::Norm1{offset, count});
}

inline ConvexOracle Norm1(int dim) { return Norm1(dim, 0, dim); }

inline ConvexOracle SqNorm(int dim, int offset, int count, double scale = 1.0) {
  detail::CheckRange(dim, offset, count, "sq_norm");
  if (!(scale >= 0.0)) throw ConfigError("sq_norm: scale must be >= 0");
  return ConvexOracle(dim, node::SqNorm{offset, count, scale});
}

inline ConvexOracle HingeSum(int dim, int offset, Vector labels,
                             double scale = 1.0) {
  detail::CheckRange(dim, offset, static_cast<int>(labels.size()), "hinge_sum");
  detail::CheckFinite(labels, "hinge_sum");
  if (!(scale >= 0.0)) throw ConfigError("hinge_sum: scale must be >= 0");
  return ConvexOracle(dim, node::HingeSum{offset, std::move(labels), scale});
}

inline ConvexOracle LogBarrier(int dim, int index, double shift = 1.0) {
  detail::CheckRange(dim, index, 1, "log_barrier");
  return ConvexOracle(dim, node::LogBarrier{index, shift});
}

inline ConvexOracle Custom(int dim, std::function<Evaluation(const Vector&)> eval,
                           std::string name = "custom") {
  if (!eval) throw ConfigError("custom oracle without callable");
  return ConvexOracle(dim, node::Custom{std::move(eval), std::move(name)});
}

// One element of the subdifferential of ||.||_2^s at z, s in [1, 2]:
// 2z for s = 2, s ||z||^(s-2) z for z != 0, and 0 at the origin.
inline Vector NormPowerSubgrad(const Vector& z, double s) {
  if (!(s >= 1.0 && s <= 2.0)) {
    throw ConfigError("norm power exponent must lie in [1, 2]");
  }
  if (s == 2.0) return 2.0 * z;
  const double norm = z.norm();
  if (norm == 0.0) return Vector::Zero(z.size());
  return (s * std::pow(norm, s - 2.0)) * z;
}

}  // namespace subgrad

#endif  // SUBGRAD_ORACLE_HPP_
