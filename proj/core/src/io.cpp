#include "bmoo/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bmoo::io {

namespace {

using nlohmann::json;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (const char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

double parse_number(const std::string& text, std::size_t line_number) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw loop::CorruptLog("unparsable number \"" + text + "\"", line_number);
  }
  return v;
}

template <class T>
void read_key(const json& obj, const char* key, T& out,
              const std::string& scope) {
  if (!obj.contains(key)) return;
  const auto& v = obj.at(key);
  try {
    out = v.get<T>();
  } catch (const json::exception&) {
    throw loop::ConfigError("config: key \"" + scope + key +
                            "\" has the wrong type");
  }
}

void reject_unknown(const json& obj, const std::vector<std::string>& known,
                    const std::string& scope) {
  for (const auto& [key, value] : obj.items()) {
    bool found = false;
    for (const auto& k : known) {
      if (k == key) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw loop::ConfigError("config: unknown key \"" + scope + key + "\"");
    }
  }
}

}  // namespace

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::string csv_header(const Problem& problem) {
  std::ostringstream os;
  os << "eval_id,phase";
  for (const auto& n : problem.variable_names()) os << "," << n;
  os << ",status,failure_reason";
  for (const auto& n : problem.objective_names()) os << "," << n;
  for (const auto& n : problem.constraint_names()) os << "," << n;
  os << ",wall_ms";
  return os.str();
}

std::string csv_row(const loop::EvalRecord& r, const Problem& problem) {
  std::ostringstream os;
  os << r.eval_id << "," << r.phase;
  for (const double v : r.x) os << "," << format_double(v);
  os << "," << (r.success ? "success" : "failure") << "," << r.failure_reason;
  const std::size_t p = problem.num_objectives();
  const std::size_t q = problem.num_constraints();
  for (std::size_t j = 0; j < p; ++j) {
    os << ",";
    if (r.success) os << format_double(r.objectives[j]);
  }
  for (std::size_t i = 0; i < q; ++i) {
    os << ",";
    if (r.success) os << format_double(r.constraints[i]);
  }
  os << "," << format_double(r.wall_ms);
  return os.str();
}

loop::EvaluationLog parse_log_text(const std::string& text,
                                   const Problem& problem) {
  loop::EvaluationLog log;
  std::istringstream in(text);
  std::string line;
  std::size_t line_number = 0;
  const std::string header = csv_header(problem);
  const std::size_t columns = split_csv(header).size();
  const std::size_t d = problem.dim();
  const std::size_t p = problem.num_objectives();
  const std::size_t q = problem.num_constraints();
  bool saw_header = false;

  // A trailing newline terminates every complete record; content after the
  // last newline is a truncated row.
  const bool truncated_tail = !text.empty() && text.back() != '\n';
  std::size_t total_lines = 0;
  {
    std::istringstream count(text);
    std::string tmp;
    while (std::getline(count, tmp)) ++total_lines;
  }

  while (std::getline(in, line)) {
    ++line_number;
    if (line_number == 1) {
      if (line != header) {
        throw loop::CorruptLog("unexpected header", 1);
      }
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;
    if (truncated_tail && line_number == total_lines) {
      throw loop::CorruptLog("truncated record", line_number);
    }
    const auto fields = split_csv(line);
    if (fields.size() != columns) {
      throw loop::CorruptLog("wrong field count", line_number);
    }
    loop::EvalRecord r;
    r.eval_id = static_cast<std::size_t>(parse_number(fields[0], line_number));
    if (r.eval_id != log.records.size() + 1) {
      throw loop::CorruptLog("eval ids not dense", line_number);
    }
    r.phase = fields[1];
    if (r.phase != "doe" && r.phase != "bo") {
      throw loop::CorruptLog("unknown phase \"" + r.phase + "\"", line_number);
    }
    std::size_t f = 2;
    r.x.resize(d);
    for (std::size_t k = 0; k < d; ++k) {
      r.x[k] = parse_number(fields[f++], line_number);
    }
    const std::string& status = fields[f++];
    if (status != "success" && status != "failure") {
      throw loop::CorruptLog("unknown status \"" + status + "\"", line_number);
    }
    r.success = status == "success";
    r.failure_reason = fields[f++];
    if (r.success) {
      r.objectives.resize(p);
      for (std::size_t j = 0; j < p; ++j) {
        r.objectives[j] = parse_number(fields[f++], line_number);
      }
      r.constraints.resize(q);
      for (std::size_t i = 0; i < q; ++i) {
        r.constraints[i] = parse_number(fields[f++], line_number);
      }
    } else {
      f += p + q;  // empty cells
    }
    r.wall_ms = parse_number(fields[f++], line_number);
    log.records.push_back(std::move(r));
  }
  if (!saw_header) {
    throw loop::CorruptLog("missing header", 1);
  }
  return log;
}

loop::EvaluationLog read_log_file(const std::string& path,
                                  const Problem& problem) {
  return parse_log_text(read_file(path), problem);
}

loop::RunConfig parse_run_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw loop::ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw loop::ConfigError("config: expected an object");
  reject_unknown(doc,
                 {"problem", "budget", "n_init", "seed", "out_dir", "params",
                  "gp", "smc", "acquisition"},
                 "");
  loop::RunConfig cfg;
  read_key(doc, "problem", cfg.problem, "");
  read_key(doc, "budget", cfg.budget, "");
  read_key(doc, "n_init", cfg.n_init, "");
  read_key(doc, "seed", cfg.seed, "");
  read_key(doc, "out_dir", cfg.out_dir, "");

  if (doc.contains("params")) {
    const auto& params = doc.at("params");
    if (!params.is_object()) {
      throw loop::ConfigError("config: key \"params\" must be an object");
    }
    try {
      cfg.params = ecs::FixedParameters::from_json_text(params.dump());
    } catch (const std::invalid_argument& e) {
      throw loop::ConfigError(std::string("config: ") + e.what());
    }
  }
  if (doc.contains("gp")) {
    const auto& g = doc.at("gp");
    if (!g.is_object()) throw loop::ConfigError("config: key \"gp\" must be an object");
    reject_unknown(g,
                   {"jitter", "restarts", "lengthscale_min", "lengthscale_max",
                    "variance_min", "variance_max", "max_iterations",
                    "large_n_threshold", "large_n_iterations", "seed",
                    "full_refit_until", "refit_period"},
                   "gp.");
    read_key(g, "jitter", cfg.gp.jitter, "gp.");
    read_key(g, "restarts", cfg.gp.restarts, "gp.");
    read_key(g, "lengthscale_min", cfg.gp.lengthscale_min, "gp.");
    read_key(g, "lengthscale_max", cfg.gp.lengthscale_max, "gp.");
    read_key(g, "variance_min", cfg.gp.variance_min, "gp.");
    read_key(g, "variance_max", cfg.gp.variance_max, "gp.");
    read_key(g, "max_iterations", cfg.gp.max_iterations, "gp.");
    read_key(g, "large_n_threshold", cfg.gp.large_n_threshold, "gp.");
    read_key(g, "large_n_iterations", cfg.gp.large_n_iterations, "gp.");
    read_key(g, "seed", cfg.gp.seed, "gp.");
    read_key(g, "full_refit_until", cfg.full_refit_until, "gp.");
    read_key(g, "refit_period", cfg.refit_period, "gp.");
  }
  if (doc.contains("smc")) {
    const auto& s = doc.at("smc");
    if (!s.is_object()) throw loop::ConfigError("config: key \"smc\" must be an object");
    reject_unknown(s,
                   {"particles", "mh_sweeps", "target_acceptance",
                    "initial_scale", "scale_min", "scale_max", "ess_fraction"},
                   "smc.");
    read_key(s, "particles", cfg.smc.particles, "smc.");
    read_key(s, "mh_sweeps", cfg.smc.mh_sweeps, "smc.");
    read_key(s, "target_acceptance", cfg.smc.target_acceptance, "smc.");
    read_key(s, "initial_scale", cfg.smc.initial_scale, "smc.");
    read_key(s, "scale_min", cfg.smc.scale_min, "smc.");
    read_key(s, "scale_max", cfg.smc.scale_max, "smc.");
    read_key(s, "ess_fraction", cfg.smc.ess_fraction, "smc.");
  }
  if (doc.contains("acquisition")) {
    const auto& a = doc.at("acquisition");
    if (!a.is_object()) {
      throw loop::ConfigError("config: key \"acquisition\" must be an object");
    }
    reject_unknown(a,
                   {"mc_points", "knn_k", "objective_padding",
                    "violation_percentile", "constraint_floor"},
                   "acquisition.");
    read_key(a, "mc_points", cfg.acquisition.mc_points, "acquisition.");
    read_key(a, "knn_k", cfg.acquisition.knn_k, "acquisition.");
    read_key(a, "objective_padding", cfg.acquisition.objective_padding,
             "acquisition.");
    read_key(a, "violation_percentile", cfg.acquisition.violation_percentile,
             "acquisition.");
    read_key(a, "constraint_floor", cfg.acquisition.constraint_floor,
             "acquisition.");
  }
  return cfg;
}

std::string run_config_json(const loop::RunConfig& cfg) {
  json doc;
  doc["problem"] = cfg.problem;
  doc["budget"] = cfg.budget;
  doc["n_init"] = cfg.n_init;
  doc["seed"] = cfg.seed;
  doc["out_dir"] = cfg.out_dir;
  doc["params"] = json::parse(cfg.params.to_json_text());
  doc["gp"] = {{"jitter", cfg.gp.jitter},
               {"restarts", cfg.gp.restarts},
               {"lengthscale_min", cfg.gp.lengthscale_min},
               {"lengthscale_max", cfg.gp.lengthscale_max},
               {"variance_min", cfg.gp.variance_min},
               {"variance_max", cfg.gp.variance_max},
               {"max_iterations", cfg.gp.max_iterations},
               {"large_n_threshold", cfg.gp.large_n_threshold},
               {"large_n_iterations", cfg.gp.large_n_iterations},
               {"seed", cfg.gp.seed},
               {"full_refit_until", cfg.full_refit_until},
               {"refit_period", cfg.refit_period}};
  doc["smc"] = {{"particles", cfg.smc.particles},
                {"mh_sweeps", cfg.smc.mh_sweeps},
                {"target_acceptance", cfg.smc.target_acceptance},
                {"initial_scale", cfg.smc.initial_scale},
                {"scale_min", cfg.smc.scale_min},
                {"scale_max", cfg.smc.scale_max},
                {"ess_fraction", cfg.smc.ess_fraction}};
  doc["acquisition"] = {
      {"mc_points", cfg.acquisition.mc_points},
      {"knn_k", cfg.acquisition.knn_k},
      {"objective_padding", cfg.acquisition.objective_padding},
      {"violation_percentile", cfg.acquisition.violation_percentile},
      {"constraint_floor", cfg.acquisition.constraint_floor}};
  return doc.dump(2);
}

std::string result_json(const loop::OptimizationResult& result,
                        const loop::RunConfig& config) {
  json doc;
  doc["versions"] = {{"bmoo_ecs", "0.1.0"}};
  doc["config"] = json::parse(run_config_json(config));
  doc["counters"] = {
      {"n_evaluations", result.counters.n_evaluations},
      {"n_success", result.counters.n_success},
      {"n_failures_doe", result.counters.n_failures_doe},
      {"n_failures_bo", result.counters.n_failures_bo},
      {"n_feasible", result.counters.n_feasible},
      {"n_pareto", result.pareto_indices.size()},
      {"first_feasible_eval_id", result.counters.first_feasible_eval_id}};
  json pareto_ids = json::array();
  for (const std::size_t idx : result.pareto_indices) {
    pareto_ids.push_back(result.log.records[idx].eval_id);
  }
  doc["pareto_eval_ids"] = pareto_ids;
  return doc.dump(2);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace bmoo::io
