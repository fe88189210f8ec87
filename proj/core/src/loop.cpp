#include "bmoo/loop.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <memory>

#include "bmoo/doe.hpp"
#include "bmoo/io.hpp"
#include "bmoo/log.hpp"
#include "bmoo/parallel.hpp"
#include "bmoo/pareto.hpp"

namespace bmoo::loop {

bool EvalRecord::feasible() const {
  if (!success) return false;
  return std::all_of(constraints.begin(), constraints.end(),
                     [](double c) { return c <= 0.0; });
}

namespace {

namespace fs = std::filesystem;

class Runner {
 public:
  Runner(RunConfig config, EvaluationLog existing_log, bool append_csv)
      : cfg_(std::move(config)),
        problem_(make_problem_checked(cfg_)),
        log_(std::move(existing_log)) {
    domain_ = problem_->domain();
    p_ = problem_->num_objectives();
    q_ = problem_->num_constraints();
    if (cfg_.n_init < 1 || cfg_.budget < cfg_.n_init) {
      throw ConfigError("config: need 1 <= n_init <= budget");
    }
    if (!cfg_.out_dir.empty()) {
      fs::create_directories(cfg_.out_dir);
      io::write_file(cfg_.out_dir + "/config.json", io::run_config_json(cfg_));
      const std::string csv_path = cfg_.out_dir + "/evaluations.csv";
      csv_.open(csv_path, append_csv ? std::ios::app : std::ios::trunc);
      if (!csv_) throw std::runtime_error("cannot open " + csv_path);
      if (!append_csv) {
        csv_ << io::csv_header(*problem_) << "\n";
        csv_.flush();
      }
    }
  }

  OptimizationResult execute() {
    run_doe_phase();
    run_bo_phase();
    OptimizationResult result = assemble_result(std::move(log_), *problem_);
    if (!cfg_.out_dir.empty()) {
      io::write_file(cfg_.out_dir + "/result.json",
                     io::result_json(result, cfg_));
      std::ofstream pareto(cfg_.out_dir + "/pareto.csv", std::ios::trunc);
      pareto << io::csv_header(*problem_) << "\n";
      for (const std::size_t idx : result.pareto_indices) {
        pareto << io::csv_row(result.log.records[idx], *problem_) << "\n";
      }
    }
    return result;
  }

 private:
  static std::unique_ptr<Problem> make_problem_checked(const RunConfig& cfg) {
    try {
      return make_problem(cfg.problem, cfg.params);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }

  void append_record(EvalRecord record) {
    record.eval_id = log_.records.size() + 1;
    if (csv_.is_open()) {
      csv_ << io::csv_row(record, *problem_) << "\n";
      csv_.flush();
    }
    log_.records.push_back(std::move(record));
  }

  static double thread_cpu_ms() {
    timespec ts{};
    clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
    return 1e3 * static_cast<double>(ts.tv_sec) +
           1e-6 * static_cast<double>(ts.tv_nsec);
  }

  void evaluate_at(std::vector<double> raw, const char* phase) {
    EvalRecord record;
    record.phase = phase;
    record.x = std::move(raw);
    // Millisecond-resolution evaluation time on the thread CPU clock:
    // immune to preemption, so reruns of this sub-millisecond model log
    // identical values and the CSV stays byte-reproducible.
    const double start = thread_cpu_ms();
    EvalOutput out = problem_->evaluate_raw(record.x);
    record.wall_ms = std::floor(thread_cpu_ms() - start);
    record.success = out.success;
    record.failure_reason = std::move(out.failure_reason);
    record.objectives = std::move(out.objectives);
    record.constraints = std::move(out.constraints);
    append_record(std::move(record));
  }

  void run_doe_phase() {
    if (log_.records.size() >= cfg_.n_init) return;
    const auto points = doe::maximin_points(domain_, cfg_.n_init,
                                            cfg_.doe_oversample, cfg_.seed);
    // A resumed run replays the same deterministic design and skips the
    // prefix that is already on disk.
    for (std::size_t i = log_.records.size();
         i < points.size() && log_.records.size() < cfg_.budget; ++i) {
      evaluate_at(problem_->to_raw(points[i]), "doe");
    }
    log_info("initial design complete: " +
             std::to_string(log_.records.size()) + " evaluations");
  }

  struct TrainingData {
    std::vector<std::vector<double>> inputs_norm;  // all records
    std::vector<bool> observed;
    std::vector<std::vector<double>> success_inputs;
    std::vector<pareto::OutcomePoint> outcomes;  // successes only
  };

  TrainingData gather() const {
    TrainingData data;
    data.inputs_norm.reserve(log_.records.size());
    for (const auto& r : log_.records) {
      data.inputs_norm.push_back(problem_->to_normalized(r.x));
      data.observed.push_back(r.success);
      if (r.success) {
        data.success_inputs.push_back(data.inputs_norm.back());
        data.outcomes.push_back(
            pareto::OutcomePoint::make(r.objectives, r.constraints));
      }
    }
    return data;
  }

  bool refit_due() const {
    const std::size_t n_obs = log_.records.size();
    if (n_obs <= cfg_.full_refit_until) return true;
    return (n_obs - cfg_.full_refit_until) % cfg_.refit_period == 0;
  }

  void update_models(const TrainingData& data, std::size_t eval_id) {
    const std::size_t outputs = p_ + q_;
    if (data.success_inputs.size() < 2) {
      models_ready_ = false;
      return;
    }
    if (models_ready_ && data.success_inputs.size() == last_fit_count_) {
      return;  // failures add no surrogate rows
    }
    const bool full = !models_ready_ || warm_lengthscales_.empty() || refit_due();
    models_.assign(outputs, gp::GPModel());
    if (warm_lengthscales_.size() != outputs) warm_lengthscales_.resize(outputs);
    if (frozen_variance_.size() != outputs) frozen_variance_.assign(outputs, 1.0);

    std::vector<std::vector<double>> targets(outputs);
    for (std::size_t o = 0; o < outputs; ++o) {
      targets[o].reserve(data.outcomes.size());
    }
    for (const auto& outcome : data.outcomes) {
      for (std::size_t j = 0; j < p_; ++j) targets[j].push_back(outcome.objectives[j]);
      for (std::size_t i = 0; i < q_; ++i) {
        targets[p_ + i].push_back(outcome.constraints[i]);
      }
    }

    parallel_for(outputs, [&](std::size_t o) {
      gp::GPConfig gpc = cfg_.gp;
      gpc.seed = make_stream(cfg_.seed, Stream::gp_restarts, eval_id, o).next_u64();
      if (full) {
        const std::vector<double>* warm =
            warm_lengthscales_[o].empty() ? nullptr : &warm_lengthscales_[o];
        models_[o] = gp::fit(data.success_inputs, targets[o], gpc, warm);
      } else {
        models_[o] = gp::fit_with_hyperparameters(
            data.success_inputs, targets[o], warm_lengthscales_[o],
            frozen_variance_[o], gpc);
      }
      warm_lengthscales_[o] = models_[o].lengthscales();
      frozen_variance_[o] = models_[o].signal_variance();
    });
    last_fit_count_ = data.success_inputs.size();
    models_ready_ = true;
  }

  void run_bo_phase() {
    std::optional<smc::Sampler> sampler;
    bool sampler_live = false;

    while (log_.records.size() < cfg_.budget) {
      const std::size_t eval_id = log_.records.size() + 1;
      const TrainingData data = gather();

      update_models(data, eval_id);

      acq::BoxConfig box_cfg;
      box_cfg.objective_padding = cfg_.acquisition.objective_padding;
      box_cfg.violation_percentile = cfg_.acquisition.violation_percentile;
      box_cfg.constraint_floor = cfg_.acquisition.constraint_floor;
      const pareto::ExtendedBox box =
          acq::refresh_box(data.outcomes, p_, q_, box_cfg);
      const bool feasible_exists =
          std::any_of(data.outcomes.begin(), data.outcomes.end(),
                      [](const pareto::OutcomePoint& o) { return o.feasible; });
      Rng ref_rng = make_stream(cfg_.seed, Stream::mc_refs, eval_id);
      acq::McReferenceSet refs = acq::McReferenceSet::sample(
          box, feasible_exists, cfg_.acquisition.mc_points, ref_rng);
      refs.filter(data.outcomes);

      acq::ObservabilityModel observability = acq::ObservabilityModel::build(
          data.inputs_norm, data.observed, cfg_.acquisition.knn_k);
      const acq::Criterion criterion(&models_, p_, std::move(refs),
                                     std::move(observability));

      const double branch_volume = criterion.refs().objective_block_active
                                       ? box.objective_volume()
                                       : box.constraint_volume();
      const double floor = 1e-12 * branch_volume /
                           static_cast<double>(cfg_.acquisition.mc_points);
      const bool models_ready = models_ready_;
      const smc::Domain& domain = domain_;
      const smc::DensityFn density =
          [&criterion, &domain, floor, models_ready](
              std::span<const double> x) -> smc::TargetValue {
        if (!domain.contains(x)) return {0.0, 0.0};
        const double p_obs = criterion.p_observable(x);
        if (p_obs <= 0.0) return {0.0, 0.0};
        if (!models_ready) return {p_obs, p_obs};  // pre-surrogate exploration
        const double ei = criterion.expected_improvement_at(x);
        return {p_obs * (ei + floor), p_obs * ei};
      };

      if (cfg_.observer) {
        RunConfig::ObserverState state;
        state.evaluations_done = log_.records.size();
        state.criterion = models_ready ? &criterion : nullptr;
        state.problem = problem_.get();
        cfg_.observer(state);
      }

      if (!sampler_live) {
        sampler.emplace(domain_, cfg_.smc, cfg_.seed);
        auto positions = doe::rejection_sample(
            domain_, cfg_.smc.particles,
            make_stream(cfg_.seed, Stream::smc_init, eval_id).next_u64());
        sampler_live = sampler->initialize(std::move(positions), density);
      }
      bool stepped = sampler_live && sampler->step(density, eval_id);
      if (!stepped) {
        // Degenerate population: reseed from the rejection sampler.
        auto positions = doe::rejection_sample(
            domain_, cfg_.smc.particles,
            make_stream(cfg_.seed, Stream::smc_init, eval_id, 1).next_u64());
        sampler_live = sampler->initialize(std::move(positions), density);
        stepped = sampler_live && sampler->step(density, eval_id);
      }

      std::vector<double> x_norm;
      if (stepped) {
        for (const auto& position : sampler->positions()) {
          if (!domain_.contains(position)) {
            throw std::logic_error("smc particle escaped the design domain");
          }
        }
        x_norm = sampler->positions()[sampler->propose_index()];
      } else {
        // Criterion is zero everywhere the classifier allows; fall back to
        // a uniform in-domain draw so the budget is still spent.
        x_norm = doe::rejection_sample(
            domain_, 1,
            make_stream(cfg_.seed, Stream::misc, eval_id).next_u64())[0];
        sampler_live = false;
      }
      evaluate_at(problem_->to_raw(x_norm), "bo");
    }
  }

  RunConfig cfg_;
  std::unique_ptr<Problem> problem_;
  EvaluationLog log_;
  smc::Domain domain_;
  std::size_t p_ = 0, q_ = 0;
  std::ofstream csv_;

  std::vector<gp::GPModel> models_;
  std::vector<std::vector<double>> warm_lengthscales_;
  std::vector<double> frozen_variance_;
  std::size_t last_fit_count_ = 0;
  bool models_ready_ = false;
};

}  // namespace

OptimizationResult assemble_result(EvaluationLog log, const Problem& problem) {
  (void)problem;
  OptimizationResult result;
  std::vector<pareto::OutcomePoint> outcomes;
  std::vector<std::size_t> success_indices;
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    const auto& r = log.records[i];
    result.counters.n_evaluations += 1;
    if (r.success) {
      result.counters.n_success += 1;
      outcomes.push_back(pareto::OutcomePoint::make(r.objectives, r.constraints));
      success_indices.push_back(i);
      if (r.feasible()) {
        result.counters.n_feasible += 1;
        if (result.counters.first_feasible_eval_id == 0) {
          result.counters.first_feasible_eval_id = r.eval_id;
        }
      }
    } else if (r.phase == "doe") {
      result.counters.n_failures_doe += 1;
    } else {
      result.counters.n_failures_bo += 1;
    }
  }
  for (const std::size_t s : pareto::pareto_front(outcomes)) {
    result.pareto_indices.push_back(success_indices[s]);
  }
  result.log = std::move(log);
  return result;
}

OptimizationResult run(const RunConfig& config) {
  Runner runner(config, EvaluationLog{}, /*append_csv=*/false);
  return runner.execute();
}

OptimizationResult resume(const std::string& run_dir,
                          std::size_t budget_override) {
  RunConfig cfg;
  try {
    cfg = io::parse_run_config(io::read_file(run_dir + "/config.json"));
  } catch (const std::runtime_error& e) {
    throw ConfigError(std::string("resume: ") + e.what());
  }
  cfg.out_dir = run_dir;
  if (budget_override > 0) cfg.budget = budget_override;
  const auto problem = make_problem(cfg.problem, cfg.params);
  EvaluationLog log = io::read_log_file(run_dir + "/evaluations.csv", *problem);
  if (log.records.size() >= cfg.budget) {
    OptimizationResult result = assemble_result(std::move(log), *problem);
    io::write_file(run_dir + "/result.json", io::result_json(result, cfg));
    return result;
  }
  Runner runner(cfg, std::move(log), /*append_csv=*/true);
  return runner.execute();
}

}  // namespace bmoo::loop
