#pragma once

#include <exception>
#include <optional>
#include <string>

#include "supermech/errors.hpp"
#include "supermech/problem.hpp"

namespace supermech {

// Exit codes: 0 success, 1 mathematical failure, 2 usage or parse error.
struct Report {
  int exit_code = 0;
  std::string output;
};

enum class Emit { json, latex };

Report run_derive(const ProblemFile& problem, Emit emit = Emit::json);

struct NoetherRequest {
  std::optional<std::string> symmetry;
  // Text of a candidate constant of motion.
  std::optional<std::string> charge;
};
Report run_noether(const ProblemFile& problem, const NoetherRequest& request);

struct SimulateOptions {
  double tolerance = 1e-6;
  std::optional<std::string> trajectory_path;
};
Report run_simulate(const ProblemFile& problem, const SimulateOptions& options = {});

// JSON report for a problem file that failed to parse (exit code 2).
Report parse_failure(const ParseError& error);

// "NotSymmetry", "SyntaxError", ...
std::string error_kind(const std::exception& error);

}  // namespace supermech
