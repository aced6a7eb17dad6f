#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sols/config.hpp"

namespace sols {

struct StepRow {
  long t = 0;
  int context = 0;
  int action = 0;
  double reward = 0.0;
  double instant_regret = 0.0;
  double cum_regret = 0.0;
  double width_at_play = 0.0;
  int set_size = 0;
  bool optimism_ok = true;      // f_star in G_t (evaluation only)
  double sigma_hat_sq = -1.0;   // < 0 when not applicable
  bool degeneracy = false;
};

struct RunResult {
  std::string policy;
  std::uint64_t seed = 0;
  std::vector<StepRow> rows;
  double final_regret = 0.0;
  double width_sum = 0.0;
  long optimism_violations = 0;
  long degeneracy_events = 0;
  long invariant_failures = 0;
  double wall_seconds = 0.0;          // excluded from the CSV contract
  double realized_noise_variance = 0.0;
  std::vector<std::string> diag_lines;

  bool optimism_clean() const { return optimism_violations == 0; }
  double regret_at(long t) const;     // cumulative regret after round t
};

// Executes exactly cfg.horizon rounds; byte-identical CSV on rerun with the
// same config and seed. Per-step math invariants (optimism given membership,
// width dominating instant regret) are asserted and counted, never fixed up.
RunResult run_once(const RunConfig& cfg);

// #schema=1 header, one row per round, summary as trailing comment lines.
void write_run_csv(const RunResult& result, std::ostream& out);
void write_run_csv_file(const RunResult& result, const std::string& path);

// Optional per-step confidence-set diagnostics (threshold cardinalities and
// radii), written next to the main CSV when cfg.diagnostics is on.
std::string run_csv_name(const RunResult& result);

}  // namespace sols
