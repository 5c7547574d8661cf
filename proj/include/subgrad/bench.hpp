// Solver dispatch and batch comparison behind the subgrad_bench tool.

#ifndef SUBGRAD_BENCH_HPP_
#define SUBGRAD_BENCH_HPP_

#include <future>
#include <optional>
#include <string>
#include <vector>

#include "subgrad/dsg.hpp"
#include "subgrad/io.hpp"
#include "subgrad/lp.hpp"
#include "subgrad/pds.hpp"
#include "subgrad/sg.hpp"
#include "subgrad/testbeds.hpp"

namespace subgrad {

enum class Method { kSg, kSingleDsg, kMultiDsg, kPds };

inline Method ParseMethod(const std::string& name) {
  if (name == "sg") return Method::kSg;
  if (name == "sdsg") return Method::kSingleDsg;
  if (name == "mdsg") return Method::kMultiDsg;
  if (name == "pds") return Method::kPds;
  throw ConfigError("unknown solver '" + name + "' (expected sg, sdsg, mdsg or pds)");
}

inline std::string DisplayName(Method m) {
  switch (m) {
    case Method::kSg: return "SG";
    case Method::kSingleDsg: return "SingleDSG";
    case Method::kMultiDsg: return "MultiDSG";
    case Method::kPds: return "PDS";
  }
  return "?";
}

inline SolveReport RunMethod(const ConstrainedProblem& p, const SolverConfig& cfg,
                             Method m) {
  switch (m) {
    case Method::kSg: return SgSolve(p, cfg);
    case Method::kSingleDsg: return DsgSolve(p, cfg, DsgMode::kSingle);
    case Method::kMultiDsg: return DsgSolve(p, cfg, DsgMode::kMulti);
    case Method::kPds: return PdsSolve(p, cfg);
  }
  throw ConfigError("unknown method");
}

struct ProblemSpec {
  std::string kind = "case1";  // case1, case2, lad, svm, file
  int n = 10;                  // case1/case2
  int nbar = 10;               // lad/svm
  std::uint64_t seed = 1;
  std::string in_path;         // file
};

struct LoadedInstance {
  TestInstance instance;
  std::optional<double> valstar;
};

inline LoadedInstance LoadInstance(const ProblemSpec& spec) {
  if (spec.kind == "case1") return {GenerateRandom(1, spec.n, spec.seed), std::nullopt};
  if (spec.kind == "case2") return {GenerateRandom(2, spec.n, spec.seed), std::nullopt};
  if (spec.kind == "lad") return {BuildLad(spec.nbar, spec.seed), std::nullopt};
  if (spec.kind == "svm") return {BuildSvm(spec.nbar, spec.seed), std::nullopt};
  if (spec.kind == "file") {
    if (spec.in_path.empty()) throw ConfigError("--problem file needs --in");
    const Json j = ReadJsonFile(spec.in_path);
    return {InstanceFromJson(j), ValstarFromJson(j)};
  }
  throw ConfigError("unknown problem '" + spec.kind +
                    "' (expected case1, case2, lad, svm or file)");
}

// Optimal value from the LP reference solver, when the problem is polyhedral.
inline std::optional<LpResult> ReferenceSolve(const ConstrainedProblem& p) {
  auto lp = EncodePolyhedral(p);
  if (!lp) return std::nullopt;
  LpResult r = LpSolveSmall(*lp);
  if (r.status != LpStatus::kOptimal) return std::nullopt;
  r.x.conservativeResize(p.n());
  return r;
}

inline SummaryRow Summarize(Method m, const SolverConfig& cfg, const SolveReport& r,
                            std::optional<double> valstar) {
  SummaryRow row;
  row.method = DisplayName(m);
  if (m == Method::kPds) row.s = cfg.s_exp;
  row.val = r.final_val;
  row.infeas = r.final_infeas;
  if (valstar) row.gap = RelativeGap(r.final_val, *valstar);
  row.time_s = r.elapsed_s;
  return row;
}

struct BatchConfig {
  std::vector<std::string> methods{"sg", "sdsg", "mdsg", "pds"};
  std::vector<double> s_values{1.0, 1.5, 2.0};
  SolverConfig base;
  std::optional<double> valstar;
  // Adds a row with the LP reference value when the problem is polyhedral.
  bool lp_reference = true;
  int jobs = 1;
};

// One row per (method, s); PDS expands over s_values with rho = 1/s unless
// base.rho is set. Failed runs produce a row carrying the error text.
inline std::vector<SummaryRow> CompareMethods(const ConstrainedProblem& p,
                                              const BatchConfig& batch) {
  if (batch.methods.empty()) throw ConfigError("empty method list");
  struct Job {
    std::string name;
    SolverConfig cfg;
  };
  std::vector<Job> jobs;
  for (const auto& name : batch.methods) {
    if (name == "pds") {
      for (double s : batch.s_values) {
        SolverConfig cfg = batch.base;
        cfg.s_exp = s;
        jobs.push_back({name, cfg});
      }
    } else {
      jobs.push_back({name, batch.base});
    }
  }

  std::optional<double> valstar = batch.valstar;
  std::optional<SummaryRow> lp_row;
  if (batch.lp_reference) {
    if (auto ref = ReferenceSolve(p)) {
      if (!valstar) valstar = ref->value;
      lp_row = SummaryRow{"LP", std::nullopt, ref->value, InfeasibilityNorm(p, ref->x),
                          RelativeGap(ref->value, *valstar), 0.0, {}};
    }
  }

  auto run_one = [&](const Job& job) {
    SummaryRow row;
    row.method = job.name;
    try {
      const Method m = ParseMethod(job.name);
      row.method = DisplayName(m);
      if (m == Method::kPds) row.s = job.cfg.s_exp;
      return Summarize(m, job.cfg, RunMethod(p, job.cfg, m), valstar);
    } catch (const std::exception& e) {
      row.error = e.what();
      return row;
    }
  };

  std::vector<SummaryRow> rows(jobs.size());
  if (batch.jobs <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) rows[i] = run_one(jobs[i]);
  } else {
    std::size_t next = 0;
    while (next < jobs.size()) {
      std::vector<std::future<SummaryRow>> wave;
      const std::size_t first = next;
      for (int w = 0; w < batch.jobs && next < jobs.size(); ++w, ++next) {
        wave.push_back(std::async(std::launch::async, run_one, std::cref(jobs[next])));
      }
      for (std::size_t i = 0; i < wave.size(); ++i) rows[first + i] = wave[i].get();
    }
  }
  if (lp_row) rows.push_back(*lp_row);
  return rows;
}

}  // namespace subgrad

#endif  // SUBGRAD_BENCH_HPP_
