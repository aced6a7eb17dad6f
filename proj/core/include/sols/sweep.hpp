#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sols/runner.hpp"

namespace sols {

struct SweepCell {
  PolicyKind policy;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;        // failures are data: the sweep continues
  double regret_q1 = 0.0;   // cum regret at T/4
  double regret_q2 = 0.0;   // at T/2
  double regret_final = 0.0;
  bool optimism_clean = false;
  long degeneracy_events = 0;
  long invariant_failures = 0;
  RunResult result;         // full trajectory for in-process consumers
};

struct PolicyAggregate {
  PolicyKind policy;
  int runs = 0;
  int failed = 0;
  double median_q1 = 0.0, mean_q1 = 0.0;
  double median_q2 = 0.0, mean_q2 = 0.0;
  double median_final = 0.0, mean_final = 0.0;
  double optimism_coverage = 0.0;  // fraction of clean replications
  long degeneracy_total = 0;
};

struct SweepResult {
  std::vector<SweepCell> cells;          // sorted by (policy name, seed)
  std::vector<PolicyAggregate> aggregates;
  long horizon = 0;
};

// Runs every (policy, seed) cell, replications in parallel, one run per
// thread at a time; results are sorted before aggregation so the summary is
// independent of scheduling order.
SweepResult run_sweep(const RunConfig& base, const std::vector<std::uint64_t>& seeds,
                      const std::vector<PolicyKind>& policies, int parallel);

// Fraction of replications per policy in which f_star stayed in G_t for
// every round.
std::map<std::string, double> audit_optimism(const SweepResult& sweep);

// Two-section summary CSV: per-cell rows, then per-policy aggregates.
void write_sweep_summary(const SweepResult& sweep, std::ostream& out);
void write_sweep_files(const SweepResult& sweep, const std::string& out_dir);

}  // namespace sols
