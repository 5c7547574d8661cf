// Problem files (JSON) and trace/summary output.
//
// Problem document:
//   {
//     "format": "subgrad-problem/1",
//     "label": "...", "seed": 7, "meta": {"n": 10, ...},      (optional)
//     "n": 10, "m": 1, "l": 2,
//     "objective": <expr>,
//     "ineq": [<expr>, ...],
//     "A": [[...], ...],       l rows of n numbers
//     "b": [...],
//     "anchor": [...],         optional feasible point
//     "valstar": -0.82         optional known optimal value
//   }
//
// Expressions (one JSON object per node, discriminated by "type"):
//   {"type": "affine",      "c": [..n..], "d": 0.0}
//   {"type": "abs_affine",  "a": [..n..], "b": 0.0}
//   {"type": "max",         "parts": [<expr>, ...]}
//   {"type": "sum",         "parts": [<expr>, ...]}
//   {"type": "pos",         "arg": <expr>}
//   {"type": "norm1",       "offset": 0, "count": n}
//   {"type": "sq_norm",     "offset": 0, "count": k, "scale": 0.5}
//   {"type": "hinge_sum",   "offset": 3, "labels": [...], "scale": 0.0025}
//   {"type": "log_barrier", "index": 0, "shift": 1.0}
// Every node evaluates on R^n. Doubles are written in shortest round-trip
// form, so save/load reproduces an instance bit-for-bit.

#ifndef SUBGRAD_IO_HPP_
#define SUBGRAD_IO_HPP_

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "subgrad/problem.hpp"
#include "subgrad/report.hpp"
#include "subgrad/testbeds.hpp"

namespace subgrad {

using Json = nlohmann::json;

inline constexpr const char* kProblemFormat = "subgrad-problem/1";
inline constexpr const char* kTraceHeader = "k,val,infeas,elapsed_s";
inline constexpr const char* kSummaryHeader = "method,s,val,infeas,gap,time_s";

class FormatError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

namespace detail {

inline Json ToJson(const Vector& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

inline Vector VectorFromJson(const Json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  Vector v(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw FormatError(std::string(what) + " must hold numbers");
    v[static_cast<int>(i)] = j[i].get<double>();
  }
  return v;
}

inline const Json& Field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing key '") + key + "'");
  return *it;
}

template <class T>
T Get(const Json& j, const char* key) {
  try {
    return Field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace detail

inline Json OracleToJson(const ConvexOracle& f) {
  using detail::ToJson;
  return std::visit(
      detail::Overloaded{
          [](const node::Affine& a) {
            return Json{{"type", "affine"}, {"c", ToJson(a.c)}, {"d", a.d}};
          },
          [](const node::AbsAffine& a) {
            return Json{{"type", "abs_affine"}, {"a", ToJson(a.a)}, {"b", a.b}};
          },
          [](const node::Max& mx) {
            Json parts = Json::array();
            for (const auto& p : mx.parts) parts.push_back(OracleToJson(p));
            return Json{{"type", "max"}, {"parts", parts}};
          },
          [](const node::Sum& s) {
            Json parts = Json::array();
            for (const auto& p : s.parts) parts.push_back(OracleToJson(p));
            return Json{{"type", "sum"}, {"parts", parts}};
          },
          [](const node::PositivePart& pp) {
            return Json{{"type", "pos"}, {"arg", OracleToJson(*pp.arg)}};
          },
          [](const node::Norm1& nr) {
            return Json{{"type", "norm1"}, {"offset", nr.offset}, {"count", nr.count}};
          },
          [](const node::SqNorm& sq) {
            return Json{{"type", "sq_norm"},
                        {"offset", sq.offset},
                        {"count", sq.count},
                        {"scale", sq.scale}};
          },
          [](const node::HingeSum& h) {
            return Json{{"type", "hinge_sum"},
                        {"offset", h.offset},
                        {"labels", ToJson(h.labels)},
                        {"scale", h.scale}};
          },
          [](const node::LogBarrier& lb) {
            return Json{{"type", "log_barrier"}, {"index", lb.index}, {"shift", lb.shift}};
          },
          [](const node::Custom& c) -> Json {
            throw FormatError("custom oracle '" + c.name + "' cannot be serialized");
          },
      },
      f.node());
}

inline ConvexOracle OracleFromJson(const Json& j, int n) {
  using detail::Get;
  if (!j.is_object()) throw FormatError("expression must be an object");
  const std::string type = Get<std::string>(j, "type");
  auto parts = [&]() {
    const Json& arr = detail::Field(j, "parts");
    if (!arr.is_array()) throw FormatError("'parts' must be an array");
    std::vector<ConvexOracle> out;
    for (const auto& p : arr) out.push_back(OracleFromJson(p, n));
    return out;
  };
  auto sized = [&](Vector v, const char* what) {
    if (v.size() != n) throw FormatError(std::string(what) + " has wrong length");
    return v;
  };
  if (type == "affine") {
    return Affine(sized(detail::VectorFromJson(detail::Field(j, "c"), "c"), "c"),
                  j.value("d", 0.0));
  }
  if (type == "abs_affine") {
    return AbsAffine(sized(detail::VectorFromJson(detail::Field(j, "a"), "a"), "a"),
                     j.value("b", 0.0));
  }
  if (type == "max") return Max(parts());
  if (type == "sum") return Sum(parts());
  if (type == "pos") return PositivePart(OracleFromJson(detail::Field(j, "arg"), n));
  if (type == "norm1") {
    return Norm1(n, Get<int>(j, "offset"), Get<int>(j, "count"));
  }
  if (type == "sq_norm") {
    return SqNorm(n, Get<int>(j, "offset"), Get<int>(j, "count"), j.value("scale", 1.0));
  }
  if (type == "hinge_sum") {
    return HingeSum(n, Get<int>(j, "offset"),
                    detail::VectorFromJson(detail::Field(j, "labels"), "labels"),
                    j.value("scale", 1.0));
  }
  if (type == "log_barrier") {
    return LogBarrier(n, Get<int>(j, "index"), j.value("shift", 1.0));
  }
  throw FormatError("unknown expression type '" + type + "'");
}

inline Json ProblemToJson(const ConstrainedProblem& p) {
  Json j;
  j["format"] = kProblemFormat;
  j["n"] = p.n();
  j["m"] = p.m();
  j["l"] = p.l();
  j["objective"] = OracleToJson(p.objective());
  Json ineq = Json::array();
  for (const auto& f : p.ineq()) ineq.push_back(OracleToJson(f));
  j["ineq"] = ineq;
  Json A = Json::array();
  for (int r = 0; r < p.l(); ++r) A.push_back(detail::ToJson(p.A().row(r).transpose()));
  j["A"] = A;
  j["b"] = detail::ToJson(p.b());
  return j;
}

inline ConstrainedProblem ProblemFromJson(const Json& j) {
  using detail::Get;
  if (!j.is_object()) throw FormatError("problem document must be an object");
  const int n = Get<int>(j, "n");
  if (n < 0) throw FormatError("'n' must be nonnegative");
  ConvexOracle f0 = OracleFromJson(detail::Field(j, "objective"), n);
  std::vector<ConvexOracle> ineq;
  if (auto it = j.find("ineq"); it != j.end()) {
    if (!it->is_array()) throw FormatError("'ineq' must be an array");
    for (const auto& e : *it) ineq.push_back(OracleFromJson(e, n));
  }
  Matrix A(0, n);
  Vector b(0);
  if (auto it = j.find("A"); it != j.end()) {
    if (!it->is_array()) throw FormatError("'A' must be an array of rows");
    A.resize(static_cast<int>(it->size()), n);
    for (std::size_t r = 0; r < it->size(); ++r) {
      Vector row = detail::VectorFromJson((*it)[r], "A row");
      if (row.size() != n) throw FormatError("row of 'A' has wrong length");
      A.row(static_cast<int>(r)) = row.transpose();
    }
    b = detail::VectorFromJson(detail::Field(j, "b"), "b");
  }
  if (j.contains("m") && Get<int>(j, "m") != static_cast<int>(ineq.size())) {
    throw FormatError("'m' disagrees with the number of inequalities");
  }
  if (j.contains("l") && Get<int>(j, "l") != A.rows()) {
    throw FormatError("'l' disagrees with the number of rows of 'A'");
  }
  return ConstrainedProblem(std::move(f0), std::move(ineq), std::move(A), std::move(b));
}

inline Json InstanceToJson(const TestInstance& inst,
                           std::optional<double> valstar = std::nullopt) {
  Json j = ProblemToJson(inst.problem);
  j["label"] = inst.label;
  j["seed"] = inst.seed;
  j["meta"] = inst.meta;
  if (inst.anchor) j["anchor"] = detail::ToJson(*inst.anchor);
  if (valstar) j["valstar"] = *valstar;
  return j;
}

inline TestInstance InstanceFromJson(const Json& j) {
  TestInstance inst{ProblemFromJson(j), j.value("label", std::string("file")),
                    j.value("seed", std::uint64_t{0}), {}, std::nullopt};
  if (auto it = j.find("meta"); it != j.end()) {
    inst.meta = it->get<std::map<std::string, double>>();
  }
  if (auto it = j.find("anchor"); it != j.end()) {
    inst.anchor = detail::VectorFromJson(*it, "anchor");
  }
  return inst;
}

inline std::optional<double> ValstarFromJson(const Json& j) {
  if (auto it = j.find("valstar"); it != j.end() && it->is_number()) {
    return it->get<double>();
  }
  return std::nullopt;
}

inline Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Text output

inline std::string FormatNumber(double v, const char* fmt = "%.15g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

inline void WriteTraceCsv(std::ostream& os, const SolveReport& report) {
  os << kTraceHeader << '\n';
  for (const auto& e : report.trace) {
    os << e.k << ',' << FormatNumber(e.val) << ',' << FormatNumber(e.infeas) << ','
       << FormatNumber(e.elapsed_s, "%.6f") << '\n';
  }
}

struct SummaryRow {
  std::string method;
  std::optional<double> s;
  double val = 0.0;
  double infeas = 0.0;
  std::optional<double> gap;
  double time_s = 0.0;
  // Set when the run failed; numeric columns are then NA.
  std::string error;
};

inline std::string FormatSummaryRow(const SummaryRow& r) {
  auto opt = [](const std::optional<double>& v, const char* fmt) {
    return v ? FormatNumber(*v, fmt) : std::string("NA");
  };
  if (!r.error.empty()) {
    return r.method + ',' + opt(r.s, "%g") + ",NA,NA,NA,NA,error: " + r.error;
  }
  return r.method + ',' + opt(r.s, "%g") + ',' + FormatNumber(r.val, "%.6g") + ',' +
         FormatNumber(r.infeas, "%.6g") + ',' + opt(r.gap, "%.6g") + ',' +
         FormatNumber(r.time_s, "%.3f");
}

}  // namespace subgrad

#endif  // SUBGRAD_IO_HPP_
