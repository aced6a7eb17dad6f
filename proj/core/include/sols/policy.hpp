#pragma once

#include <string>
#include <vector>

#include "sols/confidence.hpp"
#include "sols/function_class.hpp"
#include "sols/regression.hpp"
#include "sols/rng.hpp"

namespace sols {

enum class PolicyKind {
  ols,             // optimistic least squares
  sols_known,      // second-order, known variance upper bound
  sols_estimated,  // second-order, sigma_hat_t plugged in
  sols_unknown,    // second-order, banded data-driven radii
  greedy,
  uniform,
};

PolicyKind parse_policy(const std::string& name);
std::string policy_name(PolicyKind kind);
bool is_optimistic(PolicyKind kind);

struct PolicyParams {
  RadiusParams radius;
  double sigma_known_sq = 1.0;  // sols_known only
  double c_sigma = 1.0;         // C in the sigma_hat update
};

// Optimistic action choice: U(x,a) = max over masked f of f(x,a); returns the
// argmax action (ties -> lowest id) along with all U values.
std::pair<int, std::vector<double>> select_action(const FunctionClass& fc, const Mask& mask,
                                                  int context);

// max_a f_star(x,a) - f_star(x,a_t); evaluation only.
double instant_regret(const FunctionClass& fc, int truth_id, int context, int action);

struct StepDecision {
  int action = -1;
  std::vector<double> upper;     // per-action values backing the choice
  double width_at_play = 0.0;
  int set_size = 0;
  double sigma_hat_sq = -1.0;    // < 0 when not applicable
  long degeneracy_delta = 0;     // events raised by this round's update
};

// One learner instance: owns its confidence state and sufficient statistics.
// A round is begin_round(t) [fits, W estimates, sigma_hat, set updates], then
// choose(t, x) once the context arrives, then observe(...) with the reward.
class Policy {
 public:
  Policy(PolicyKind kind, const FunctionClass& fc, PolicyParams params,
         std::uint64_t policy_stream_seed);

  void begin_round(long t);
  StepDecision choose(long t, int context);
  void observe(int context, int action, double reward, double width_at_play);

  PolicyKind kind() const { return kind_; }
  const ConfidenceState& state() const { return state_; }
  const CellStats& stats() const { return stats_; }
  long degeneracy_events() const { return state_.degeneracy_events; }
  double sigma_hat_sq() const { return sigma_hat_sq_; }

 private:
  PolicyKind kind_;
  const FunctionClass& fc_;
  PolicyParams params_;
  RadiusParams effective_;  // sols_estimated halves delta for the sets
  Rng rng_;
  CellStats stats_;
  ConfidenceState state_;
  double sigma_hat_sq_;
  long prev_degeneracy_ = 0;
};

}  // namespace sols
