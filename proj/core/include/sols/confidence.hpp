#pragma once

#include <vector>

#include "sols/function_class.hpp"
#include "sols/regression.hpp"

namespace sols {

struct RadiusParams {
  double bound = 1.0;   // B
  double delta = 0.1;
  double c_ols = 1.0;   // C in beta_ols; the analysis never pins it down
  double c_prime = 1.0; // C' in the unknown-variance radius
  // Confidence share per threshold: delta/(2(i+1)^2) as printed in the
  // algorithm box, or delta/(4(i+1)^2 t^2) as used in its proof.
  bool per_round_union = false;
};

// beta_t(delta) = 4 C B^2 log(t |F| / delta)
double beta_ols(long t, int num_functions, const RadiusParams& params);

// beta_t(tau, delta~, sigma~^2) = (4 min(tau B, B^2) + 16 sigma~^2) log(t |F| / delta~)
double beta_known_var(long t, double tau, double sigma_tilde_sq, int num_functions,
                      double delta_tilde, const RadiusParams& params);

// C' tau sqrt(W log(2 i^2 t |F| / delta)) + C' tau B log(2 i^2 t |F| / delta)
double radius_unknown_var(long t, double tau, double w_band, int num_functions, int level,
                          double delta, const RadiusParams& params);

// q_t = ceil(log2 t). Base 2 matches the dyadic thresholds tau_i = B/2^i.
int dyadic_level_count(long t);

// Confidence-set state shared by the three updates. threshold[i] is the
// per-threshold mask for tau_i; the known-variance update uses i = 0..q,
// the unknown-variance (banded) update uses i = 1..q.
struct ConfidenceState {
  Mask global;
  std::vector<Mask> threshold;
  std::vector<int> fit;           // per-threshold (or per-band) fit ids
  int unfiltered_fit = -1;
  int levels = -1;                // highest active threshold index
  long degeneracy_events = 0;
  std::vector<double> last_radii; // diagnostics, parallel to threshold

  static ConfidenceState initial(int num_functions);
};

// Algorithm-1 sets: recomputed fresh each round from the unfiltered fit,
// never intersected with the past.
void update_sets_ols(ConfidenceState& state, int fit_id, const FunctionClass& fc,
                     const CellStats& stats, long t, const RadiusParams& params);

// Algorithm-2 sets: per-threshold filtered fits over G_{t-1}, membership by
// filtered distance against beta_known_var, nested by intersection.
void update_sets_known_var(ConfidenceState& state, const FunctionClass& fc, const CellStats& stats,
                           long t, double sigma_tilde_sq, const RadiusParams& params);

// Algorithm-3 sets: dyadic-band fits and band variance estimates W, membership
// against the data-driven radius, nested by intersection. No i = 0 bucket.
void update_sets_unknown_var(ConfidenceState& state, const FunctionClass& fc,
                             const CellStats& stats, long t, const RadiusParams& params);

}  // namespace sols
