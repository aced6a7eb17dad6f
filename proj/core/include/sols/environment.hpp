#pragma once

#include <string>
#include <vector>

#include "sols/function_class.hpp"
#include "sols/rng.hpp"

namespace sols {

enum class NoiseKind { zero, rademacher, truncated_gaussian };

// Per-round noise standard deviations. Constant, explicit per-round list, or
// piecewise phases given as (last round, sigma) pairs.
struct VarianceSchedule {
  enum class Kind { constant, listed, phases };
  Kind kind = Kind::constant;
  double sigma = 0.0;
  std::vector<double> listed;                    // listed: sigma for round t at [t-1]
  std::vector<std::pair<long, double>> phases;   // phases: rounds <= first use second

  static VarianceSchedule constant_sigma(double s) {
    VarianceSchedule v;
    v.kind = Kind::constant;
    v.sigma = s;
    return v;
  }
  static VarianceSchedule from_list(std::vector<double> s) {
    VarianceSchedule v;
    v.kind = Kind::listed;
    v.listed = std::move(s);
    return v;
  }
  static VarianceSchedule from_phases(std::vector<std::pair<long, double>> p) {
    VarianceSchedule v;
    v.kind = Kind::phases;
    v.phases = std::move(p);
    return v;
  }

  double sigma_at(long t) const;  // t is 1-based
  double max_sigma(long horizon) const;
};

struct NoiseModel {
  NoiseKind kind = NoiseKind::rademacher;
  VarianceSchedule schedule;
};

enum class ContextKind { iid_uniform, cycle, listed };

struct ContextProcess {
  ContextKind kind = ContextKind::iid_uniform;
  std::vector<int> sequence;  // cycle pattern or explicit per-round list
};

struct EnvironmentSpec {
  FunctionClass fclass;
  int truth_id = 0;
  ContextProcess contexts;
  NoiseModel noise;
  long horizon = 1;
};

// Throws ConfigError on inconsistent settings (bad truth id, short schedules,
// rademacher sigma above B, ...).
void validate_environment(const EnvironmentSpec& spec);

int sample_context(const EnvironmentSpec& spec, long t, Rng& context_rng);

struct RewardDraw {
  double reward;
  double truth_mean;  // evaluation only
  double sigma;       // evaluation only (nominal sigma_t)
};

// reward = f_star(x,a) + xi_t with E[xi_t] = 0 and |xi_t| <= B.
// rademacher delivers Var(xi_t) = sigma_t^2 exactly; truncated_gaussian
// resamples N(0, sigma_t^2) until |xi| <= B, so its realized variance is
// below nominal and must be measured, not assumed.
RewardDraw sample_reward(const EnvironmentSpec& spec, long t, int x, int a, Rng& noise_rng);

}  // namespace sols
