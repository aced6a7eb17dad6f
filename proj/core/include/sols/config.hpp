#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "sols/environment.hpp"
#include "sols/policy.hpp"

namespace sols {

// Plain-text `key = value` run configuration. Unknown keys are errors.
struct RunConfig {
  // Function class: either a file or generator dimensions.
  std::string class_file;
  int num_functions = 20;
  int num_contexts = 5;
  int num_actions = 5;
  double bound = 1.0;
  int truth_id = 0;
  double min_gap = 0.0;

  // Environment.
  std::string context_process = "iid";  // iid | cycle:0,1,... | list:0,1,...
  std::string noise = "rademacher";     // zero | rademacher | truncated_gaussian
  std::string sigma_spec = "sigma=0.1"; // sigma=s | sigma_list=s1,s2,... | sigma_phase=T1:s1,...
  long horizon = 1000;
  std::uint64_t seed = 1;

  // Policy.
  PolicyKind policy = PolicyKind::ols;
  double delta = 0.1;
  double c_ols = 1.0;
  double c_prime = 1.0;
  double c_sigma = 1.0;
  double sigma_known_sq = -1.0;  // default: bound^2
  bool per_round_union = false;
  bool diagnostics = false;      // extra per-step confidence-set CSV
};

RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::string& path);
void apply_config_line(RunConfig& cfg, const std::string& line);

// Deterministic given cfg.seed: loads class_file or draws the generator
// class from the class stream (redrawing the truth row while min_gap asks).
EnvironmentSpec build_environment(const RunConfig& cfg);

PolicyParams build_policy_params(const RunConfig& cfg);

}  // namespace sols
