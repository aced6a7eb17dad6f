#include "sols/confidence.hpp"

#include <bit>
#include <cmath>

namespace sols {

double beta_ols(long t, int num_functions, const RadiusParams& params) {
  const double b2 = params.bound * params.bound;
  return 4.0 * params.c_ols * b2 *
         std::log(static_cast<double>(t) * num_functions / params.delta);
}

double beta_known_var(long t, double tau, double sigma_tilde_sq, int num_functions,
                      double delta_tilde, const RadiusParams& params) {
  const double b = params.bound;
  const double lead = 4.0 * std::min(tau * b, b * b) + 16.0 * sigma_tilde_sq;
  return lead * std::log(static_cast<double>(t) * num_functions / delta_tilde);
}

double radius_unknown_var(long t, double tau, double w_band, int num_functions, int level,
                          double delta, const RadiusParams& params) {
  const double lg =
      std::log(2.0 * level * level * static_cast<double>(t) * num_functions / delta);
  return params.c_prime * tau * std::sqrt(w_band * lg) + params.c_prime * tau * params.bound * lg;
}

int dyadic_level_count(long t) {
  if (t <= 1) return 0;
  return std::bit_width(static_cast<unsigned long long>(t - 1));
}

ConfidenceState ConfidenceState::initial(int num_functions) {
  ConfidenceState s;
  s.global = Mask::full(num_functions);
  return s;
}

namespace {

// Shared recovery path: an emptied set is a reportable degeneracy, never a
// silent state. The offending set restarts from the round's fit, which is
// always inside G_{t-1}, so nestedness survives the reset.
void recover_if_empty(Mask& mask, int fit_id, ConfidenceState& state) {
  if (mask.empty()) {
    ++state.degeneracy_events;
    mask = Mask::singleton(mask.size(), fit_id);
  }
}

}  // namespace

void update_sets_ols(ConfidenceState& state, int fit_id, const FunctionClass& fc,
                     const CellStats& stats, long t, const RadiusParams& params) {
  const double radius = beta_ols(t, fc.num_functions, params);
  Mask fresh = Mask::none(fc.num_functions);
  for (int f = 0; f < fc.num_functions; ++f) {
    if (filtered_distance(fc, fit_id, f, stats, FilterSpec::all()) <= radius) fresh.set(f);
  }
  recover_if_empty(fresh, fit_id, state);
  state.global = fresh;
  state.unfiltered_fit = fit_id;
  state.levels = -1;
  state.last_radii.assign(1, radius);
}

void update_sets_known_var(ConfidenceState& state, const FunctionClass& fc, const CellStats& stats,
                           long t, double sigma_tilde_sq, const RadiusParams& params) {
  const int q = dyadic_level_count(t);
  const Mask prev_global = state.global;

  // A threshold index activating for the first time starts from G_{t-1}.
  if (static_cast<int>(state.threshold.size()) < q + 1) {
    state.threshold.resize(q + 1, prev_global);
    state.fit.resize(q + 1, -1);
  }
  state.last_radii.assign(q + 1, 0.0);

  Mask global = prev_global;
  double tau = params.bound;
  for (int i = 0; i <= q; ++i) {
    const FilterSpec filter = FilterSpec::width_le(i);
    const int fit_id = least_squares_fit(fc, prev_global, stats, filter);
    const double share = params.per_round_union
                             ? params.delta / (4.0 * (i + 1) * (i + 1) * t * t)
                             : params.delta / (2.0 * (i + 1) * (i + 1));
    const double radius = beta_known_var(t, tau, sigma_tilde_sq, fc.num_functions, share, params);

    Mask& level_mask = state.threshold[i];
    for (int f = 0; f < fc.num_functions; ++f) {
      if (!level_mask.test(f)) continue;
      if (filtered_distance(fc, fit_id, f, stats, filter) > radius) level_mask.set(f, false);
    }
    recover_if_empty(level_mask, fit_id, state);
    global &= level_mask;
    state.fit[i] = fit_id;
    state.last_radii[i] = radius;
    tau *= 0.5;
  }
  recover_if_empty(global, state.fit[0], state);
  state.global = global;
  state.unfiltered_fit = state.fit[0];
  state.levels = q;
}

void update_sets_unknown_var(ConfidenceState& state, const FunctionClass& fc,
                             const CellStats& stats, long t, const RadiusParams& params) {
  const int q = dyadic_level_count(t);
  const Mask prev_global = state.global;

  if (static_cast<int>(state.threshold.size()) < q + 1) {
    state.threshold.resize(q + 1, prev_global);
    state.fit.resize(q + 1, -1);
  }
  state.last_radii.assign(q + 1, 0.0);

  Mask global = prev_global;
  double tau = params.bound * 0.5;
  for (int i = 1; i <= q; ++i) {
    const FilterSpec filter = FilterSpec::band(i);
    const int fit_id = least_squares_fit(fc, prev_global, stats, filter);
    const double w_band = cumulative_variance_estimate(fc, fit_id, stats, filter);
    const double radius =
        radius_unknown_var(t, tau, w_band, fc.num_functions, i, params.delta, params);

    Mask& level_mask = state.threshold[i];
    for (int f = 0; f < fc.num_functions; ++f) {
      if (!level_mask.test(f)) continue;
      if (filtered_distance(fc, fit_id, f, stats, filter) > radius) level_mask.set(f, false);
    }
    recover_if_empty(level_mask, fit_id, state);
    global &= level_mask;
    state.fit[i] = fit_id;
    state.last_radii[i] = radius;
    tau *= 0.5;
  }
  recover_if_empty(global, q >= 1 ? state.fit[1] : prev_global.lowest(), state);
  state.global = global;
  state.levels = q;
}

}  // namespace sols
