#include "sols/policy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sols {

PolicyKind parse_policy(const std::string& name) {
  if (name == "ols") return PolicyKind::ols;
  if (name == "sols_known") return PolicyKind::sols_known;
  if (name == "sols_estimated") return PolicyKind::sols_estimated;
  if (name == "sols_unknown") return PolicyKind::sols_unknown;
  if (name == "greedy") return PolicyKind::greedy;
  if (name == "uniform") return PolicyKind::uniform;
  throw ConfigError("unknown policy: " + name);
}

std::string policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::ols: return "ols";
    case PolicyKind::sols_known: return "sols_known";
    case PolicyKind::sols_estimated: return "sols_estimated";
    case PolicyKind::sols_unknown: return "sols_unknown";
    case PolicyKind::greedy: return "greedy";
    case PolicyKind::uniform: return "uniform";
  }
  return "?";
}

bool is_optimistic(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::ols:
    case PolicyKind::sols_known:
    case PolicyKind::sols_estimated:
    case PolicyKind::sols_unknown:
      return true;
    default:
      return false;
  }
}

std::pair<int, std::vector<double>> select_action(const FunctionClass& fc, const Mask& mask,
                                                  int context) {
  if (mask.empty()) throw DegenerateSetError("select_action: empty mask");
  std::vector<double> upper(fc.num_actions);
  for (int a = 0; a < fc.num_actions; ++a) {
    double u = -std::numeric_limits<double>::infinity();
    for (int f = 0; f < fc.num_functions; ++f) {
      if (!mask.test(f)) continue;
      u = std::max(u, fc.value(f, context, a));
    }
    upper[a] = u;
  }
  int best = 0;
  for (int a = 1; a < fc.num_actions; ++a) {
    if (upper[a] > upper[best]) best = a;
  }
  return {best, std::move(upper)};
}

double instant_regret(const FunctionClass& fc, int truth_id, int context, int action) {
  return best_mean(fc, truth_id, context).second - fc.value(truth_id, context, action);
}

Policy::Policy(PolicyKind kind, const FunctionClass& fc, PolicyParams params,
               std::uint64_t policy_stream_seed)
    : kind_(kind),
      fc_(fc),
      params_(params),
      effective_(params.radius),
      rng_(policy_stream_seed),
      stats_(fc.num_contexts, fc.num_actions, fc.bound),
      state_(ConfidenceState::initial(fc.num_functions)),
      sigma_hat_sq_(fc.bound * fc.bound) {
  if (kind_ == PolicyKind::sols_estimated) effective_.delta = params.radius.delta / 2.0;
}

void Policy::begin_round(long t) {
  prev_degeneracy_ = state_.degeneracy_events;
  switch (kind_) {
    case PolicyKind::ols: {
      const int fit = least_squares_fit(fc_, Mask::full(fc_.num_functions), stats_,
                                        FilterSpec::all());
      update_sets_ols(state_, fit, fc_, stats_, t, effective_);
      break;
    }
    case PolicyKind::sols_known:
      update_sets_known_var(state_, fc_, stats_, t, params_.sigma_known_sq, effective_);
      break;
    case PolicyKind::sols_estimated: {
      // sigma_hat pipeline: unfiltered fit over all of F, then the
      // nonincreasing upper-bound update with delta' = delta/2.
      if (t >= 2) {
        const int fit = least_squares_fit(fc_, Mask::full(fc_.num_functions), stats_,
                                          FilterSpec::all());
        const double w = cumulative_variance_estimate(fc_, fit, stats_, FilterSpec::all());
        sigma_hat_sq_ = sigma_hat_update(sigma_hat_sq_, w, t, fc_.bound, fc_.num_functions,
                                         params_.radius.delta / 2.0, params_.c_sigma);
      }
      update_sets_known_var(state_, fc_, stats_, t, sigma_hat_sq_, effective_);
      break;
    }
    case PolicyKind::sols_unknown:
      update_sets_unknown_var(state_, fc_, stats_, t, effective_);
      break;
    case PolicyKind::greedy: {
      state_.unfiltered_fit = least_squares_fit(fc_, Mask::full(fc_.num_functions), stats_,
                                                FilterSpec::all());
      break;
    }
    case PolicyKind::uniform:
      break;
  }
}

StepDecision Policy::choose(long t, int context) {
  (void)t;
  StepDecision d;
  switch (kind_) {
    case PolicyKind::greedy: {
      const int fit = state_.unfiltered_fit;
      d.upper.resize(fc_.num_actions);
      for (int a = 0; a < fc_.num_actions; ++a) d.upper[a] = fc_.value(fit, context, a);
      d.action = 0;
      for (int a = 1; a < fc_.num_actions; ++a) {
        if (d.upper[a] > d.upper[d.action]) d.action = a;
      }
      break;
    }
    case PolicyKind::uniform:
      d.action = static_cast<int>(rng_.next_below(fc_.num_actions));
      break;
    default: {
      auto [action, upper] = select_action(fc_, state_.global, context);
      d.action = action;
      d.upper = std::move(upper);
      break;
    }
  }
  d.width_at_play = width(fc_, state_.global, context, d.action);
  d.set_size = state_.global.count();
  if (kind_ == PolicyKind::sols_estimated) d.sigma_hat_sq = sigma_hat_sq_;
  d.degeneracy_delta = state_.degeneracy_events - prev_degeneracy_;
  return d;
}

void Policy::observe(int context, int action, double reward, double width_at_play) {
  stats_.append(context, action, reward, width_at_play);
}

}  // namespace sols
