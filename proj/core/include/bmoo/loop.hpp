#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bmoo/acquisition.hpp"
#include "bmoo/ecs/params.hpp"
#include "bmoo/gp.hpp"
#include "bmoo/problem.hpp"
#include "bmoo/smc.hpp"

namespace bmoo::loop {

struct AcquisitionConfig {
  std::size_t mc_points = 4096;  ///< reference points per iteration
  int knn_k = 5;
  double objective_padding = 0.2;
  double violation_percentile = 0.95;
  double constraint_floor = 1.0;
};

struct RunConfig {
  std::string problem = "ecs";
  std::size_t budget = 500;  ///< total simulator calls, failures included
  std::size_t n_init = 90;
  std::uint64_t seed = 0;
  std::string out_dir;  ///< empty: keep everything in memory
  ecs::FixedParameters params;
  gp::GPConfig gp;
  smc::SmcConfig smc;
  AcquisitionConfig acquisition;
  std::size_t doe_oversample = 50;
  std::size_t full_refit_until = 150;  ///< observations; then periodic
  std::size_t refit_period = 5;

  /// Test hook (not serialized): called at the top of each BO iteration
  /// once the iteration's surrogate state is in place.
  struct ObserverState {
    std::size_t evaluations_done = 0;
    const acq::Criterion* criterion = nullptr;
    const Problem* problem = nullptr;
  };
  std::function<void(const ObserverState&)> observer;
};

struct EvalRecord {
  std::size_t eval_id = 0;  ///< dense from 1
  std::string phase;        ///< "doe" | "bo"
  std::vector<double> x;    ///< raw variable values
  bool success = false;
  std::string failure_reason;
  std::vector<double> objectives;
  std::vector<double> constraints;
  double wall_ms = 0.0;

  bool feasible() const;
};

struct EvaluationLog {
  std::vector<EvalRecord> records;
};

struct RunCounters {
  std::size_t n_evaluations = 0;
  std::size_t n_success = 0;
  std::size_t n_failures_doe = 0;
  std::size_t n_failures_bo = 0;
  std::size_t n_feasible = 0;
  std::size_t first_feasible_eval_id = 0;  ///< 0 when none found
};

struct OptimizationResult {
  EvaluationLog log;
  std::vector<std::size_t> pareto_indices;  ///< indices into log.records
  RunCounters counters;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CorruptLog : public std::runtime_error {
 public:
  CorruptLog(const std::string& what, std::size_t line_number)
      : std::runtime_error(what + " (line " + std::to_string(line_number) + ")"),
        line(line_number) {}
  std::size_t line = 0;
};

/// Full optimization: maximin DoE then one evaluation per iteration at the
/// maximizer of the observability-weighted improvement criterion over the
/// SMC population. Simulator failures are data, never errors. When
/// config.out_dir is set, writes evaluations.csv (append-only),
/// config.json, pareto.csv and result.json there.
OptimizationResult run(const RunConfig& config);

/// Continues an interrupted run from its directory (config.json +
/// evaluations.csv). The seed stream is keyed by eval id, so the
/// continuation draws the same randomness an uninterrupted run would
/// have drawn at those evaluations. budget_override replaces the stored
/// budget when positive.
OptimizationResult resume(const std::string& run_dir,
                          std::size_t budget_override = 0);

/// Derives counters + Pareto subset from a log (used by run, resume and
/// report tooling).
OptimizationResult assemble_result(EvaluationLog log, const Problem& problem);

}  // namespace bmoo::loop
