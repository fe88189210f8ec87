#include <algorithm>
#include <array>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "bmoo/ecs/model.hpp"
#include "bmoo/ecs/table2.hpp"
#include "bmoo/io.hpp"
#include "bmoo/log.hpp"
#include "bmoo/loop.hpp"
#include "bmoo/plot.hpp"
#include "bmoo/problem.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

json state_json(const bmoo::ecs::StateVector& s) {
  return {{"Tt2", s.Tt2},   {"Tt3", s.Tt3},   {"Tt4", s.Tt4},
          {"Tt5", s.Tt5},   {"Tt2r", s.Tt2r}, {"Tt3r", s.Tt3r},
          {"Pt2", s.Pt2},   {"Pt3", s.Pt3},   {"Pt4", s.Pt4},
          {"Pt5", s.Pt5},   {"W_C", s.w_compressor},
          {"W_T", s.w_turbine}, {"omega", s.omega}};
}

json statics_json(const bmoo::ecs::StaticState& s) {
  return {{"T2", s.T2},     {"T3", s.T3},     {"T4", s.T4},
          {"T5", s.T5},     {"P2", s.P2},     {"P3", s.P3},
          {"P4", s.P4},     {"P5", s.P5},     {"C2x", s.C2x},
          {"C3m", s.C3m},   {"C4m", s.C4m},   {"C5x", s.C5x},
          {"T1r", s.T1r},   {"T2r", s.T2r},   {"T3r", s.T3r},
          {"P2r", s.P2r},   {"P3r", s.P3r},   {"C2_norm", s.C2_norm},
          {"C3_norm", s.C3_norm}, {"C4_norm", s.C4_norm},
          {"C5_norm", s.C5_norm}};
}

json outcome_json(const bmoo::ecs::SimulationOutcome& outcome) {
  if (!outcome.ok()) {
    return {{"status", "failure"},
            {"reason", outcome.failure->to_string()}};
  }
  const auto& s = *outcome.success;
  json constraints = json::object();
  const auto& names = bmoo::ecs::constraint_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    constraints[names[i]] = s.constraints[i];
  }
  return {{"status", "success"},
          {"objectives",
           {{"mass_kg", s.mass}, {"entropy_w_per_k", s.entropy_rate}}},
          {"constraints", constraints},
          {"feasible", s.feasible()},
          {"state", state_json(s.state)},
          {"statics", statics_json(s.statics)}};
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed,
            std::optional<std::size_t> budget,
            const std::optional<std::string>& out_dir) {
  bmoo::loop::RunConfig cfg;
  try {
    cfg = bmoo::io::parse_run_config(bmoo::io::read_file(config_path));
  } catch (const bmoo::loop::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "cannot read config: " << e.what() << "\n";
    return kExitIo;
  }
  if (seed) cfg.seed = *seed;
  if (budget) cfg.budget = *budget;
  if (out_dir) cfg.out_dir = *out_dir;
  if (cfg.out_dir.empty()) {
    std::cerr << "config: out_dir is required (or pass --out)\n";
    return kExitConfig;
  }
  try {
    const auto result = bmoo::loop::run(cfg);
    std::cout << "run complete: " << result.counters.n_evaluations
              << " evaluations, " << result.counters.n_feasible
              << " feasible, " << result.pareto_indices.size()
              << " Pareto-optimal; results in " << cfg.out_dir << "\n";
    return kExitOk;
  } catch (const bmoo::loop::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return kExitIo;
  }
}

int cmd_resume(const std::string& run_dir, std::optional<std::size_t> budget) {
  try {
    const auto result = bmoo::loop::resume(run_dir, budget.value_or(0));
    std::cout << "resume complete: " << result.counters.n_evaluations
              << " evaluations\n";
    return kExitOk;
  } catch (const bmoo::loop::CorruptLog& e) {
    std::cerr << "corrupt log: " << e.what() << "\n";
    return kExitConfig;
  } catch (const bmoo::loop::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "resume failed: " << e.what() << "\n";
    return kExitIo;
  }
}

int cmd_plot(const std::string& run_dir, const std::string& out_path) {
  try {
    const auto cfg = bmoo::io::parse_run_config(
        bmoo::io::read_file(run_dir + "/config.json"));
    const auto problem = bmoo::make_problem(cfg.problem, cfg.params);
    auto log = bmoo::io::read_log_file(run_dir + "/evaluations.csv", *problem);
    const auto result = bmoo::loop::assemble_result(std::move(log), *problem);
    const std::string svg = bmoo::plot::pareto_scatter_svg(result, *problem);
    try {
      bmoo::io::write_file(out_path, svg);
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return kExitIo;
    }
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "missing or corrupt run: " << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_eval(const std::optional<std::string>& x_json, std::optional<int> point,
             const std::optional<std::string>& params_path) {
  bmoo::ecs::FixedParameters params;
  if (params_path) {
    try {
      params = bmoo::ecs::FixedParameters::from_json_text(
          bmoo::io::read_file(*params_path));
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return kExitConfig;
    }
  }
  if (x_json.has_value() == point.has_value()) {
    std::cerr << "eval: pass exactly one of --x and --table2-point\n";
    return kExitConfig;
  }
  bmoo::ecs::DesignVector x;
  if (point) {
    if (*point < 1 || *point > 7) {
      std::cerr << "eval: --table2-point must be in 1..7\n";
      return kExitConfig;
    }
    x = bmoo::ecs::reference_design(*point).x;
  } else {
    json doc;
    try {
      doc = json::parse(*x_json);
    } catch (const json::exception& e) {
      std::cerr << "eval: --x is not valid JSON: " << e.what() << "\n";
      return kExitConfig;
    }
    if (!doc.is_object()) {
      std::cerr << "eval: --x must be a JSON object of the 18 variables\n";
      return kExitConfig;
    }
    const auto& names = bmoo::ecs::design_variable_names();
    std::array<double, bmoo::ecs::kNumDesignVariables> values{};
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!doc.contains(names[i]) || !doc.at(names[i]).is_number()) {
        std::cerr << "eval: --x missing numeric \"" << names[i] << "\"\n";
        return kExitConfig;
      }
      values[i] = doc.at(names[i]).get<double>();
    }
    for (const auto& [key, value] : doc.items()) {
      (void)value;
      if (std::find(names.begin(), names.end(), key) == names.end()) {
        std::cerr << "eval: --x has unknown variable \"" << key << "\"\n";
        return kExitConfig;
      }
    }
    x = bmoo::ecs::DesignVector::from_array(values);
    if (!bmoo::ecs::within_bounds(x, 1e-9)) {
      std::cerr << "eval: --x lies outside the design variable bounds\n";
      return kExitConfig;
    }
  }
  const auto outcome = bmoo::ecs::evaluate(x, params);
  std::cout << outcome_json(outcome).dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained multi-objective Bayesian optimization with a "
               "built-in aircraft environment-control-system sizing problem"};
  app.require_subcommand(1);

  std::string config_path, run_dir, out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> budget;
  std::optional<std::string> out_dir, x_json, params_path;
  std::optional<int> table2_point;

  auto* run = app.add_subcommand("run", "Launch an optimization run");
  run->add_option("--config", config_path, "JSON config file")->required();
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--budget", budget, "Override the evaluation budget");
  run->add_option("--out", out_dir, "Override the output directory");

  auto* resume = app.add_subcommand("resume", "Continue an interrupted run");
  resume->add_option("--run", run_dir, "Run directory")->required();
  resume->add_option("--budget", budget, "Extend/override the budget");

  auto* plot = app.add_subcommand("plot", "Render the objective scatter SVG");
  plot->add_option("--run", run_dir, "Run directory")->required();
  plot->add_option("--out", out_path, "Output SVG path")->required();

  auto* eval = app.add_subcommand("eval", "Evaluate one design");
  eval->add_option("--x", x_json, "JSON object with the 18 design variables");
  eval->add_option("--table2-point", table2_point,
                   "Built-in reference design key (1..7)");
  eval->add_option("--params", params_path, "JSON parameter overrides file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kExitConfig;
  }

  if (run->parsed()) return cmd_run(config_path, seed, budget, out_dir);
  if (resume->parsed()) return cmd_resume(run_dir, budget);
  if (plot->parsed()) return cmd_plot(run_dir, out_path);
  if (eval->parsed()) return cmd_eval(x_json, table2_point, params_path);
  return kExitConfig;
}
