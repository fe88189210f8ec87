#pragma once

#include <string>
#include <vector>

#include "bmoo/loop.hpp"
#include "bmoo/problem.hpp"

namespace bmoo::io {

/// 17 significant digits: doubles round-trip exactly through the text logs.
std::string format_double(double v);

std::string csv_header(const Problem& problem);
std::string csv_row(const loop::EvalRecord& record, const Problem& problem);

/// Parses evaluations.csv written for the given problem. Malformed content
/// (bad column count, unparsable number, non-dense eval ids, truncated
/// line) raises loop::CorruptLog carrying the 1-based line number.
loop::EvaluationLog parse_log_text(const std::string& text,
                                   const Problem& problem);
loop::EvaluationLog read_log_file(const std::string& path,
                                  const Problem& problem);

/// Strict config document: {"problem", "budget", "n_init", "seed",
/// "out_dir", "params", "gp", "smc", "acquisition"}. Unknown keys and
/// type mismatches raise loop::ConfigError naming the key.
loop::RunConfig parse_run_config(const std::string& json_text);
std::string run_config_json(const loop::RunConfig& config);

std::string result_json(const loop::OptimizationResult& result,
                        const loop::RunConfig& config);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace bmoo::io
