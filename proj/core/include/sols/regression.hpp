#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <vector>

#include "sols/function_class.hpp"

namespace sols {

// Which rounds enter a filtered sum. Filters are evaluated against the width
// frozen at play time, never against a recomputed width. Thresholds are the
// dyadic ladder tau_i = B / 2^i.
struct FilterSpec {
  enum class Kind { all, width_le, width_band };
  Kind kind = Kind::all;
  int level = 0;

  static FilterSpec all() { return {Kind::all, 0}; }
  // width <= tau_level
  static FilterSpec width_le(int level) { return {Kind::width_le, level}; }
  // width in (tau_level, tau_{level-1}]
  static FilterSpec band(int level) { return {Kind::width_band, level}; }

  double threshold(double bound) const { return std::ldexp(bound, -level); }
};

// Exact sufficient statistics for every filtered sum the algorithms need:
// per cell and per dyadic width bucket, N = sum b, S = sum b*r, Q = sum b*r^2.
// A record's bucket memberships are fixed at append time from its frozen
// width, so later set shrinkage never reclassifies history.
class CellStats {
 public:
  static constexpr int kMaxLevel = 40;

  struct Table {
    std::vector<double> n, s, q;
    bool any = false;
  };

  CellStats(int num_contexts, int num_actions, double bound);

  void append(int x, int a, double reward, double width_at_play);

  // Per-cell (N, S, Q) under the filter; nullptr when no record matches.
  const Table* table(FilterSpec filter) const;

  long rounds() const { return rounds_; }
  int num_cells() const { return num_cells_; }
  double bound() const { return bound_; }

 private:
  Table& touch(std::unique_ptr<Table>& slot);

  int num_cells_;
  int num_actions_;
  double bound_;
  long rounds_ = 0;
  std::unique_ptr<Table> all_;
  // le_[i]: records with width <= tau_i.  band_[i]: width in (tau_i, tau_{i-1}].
  std::array<std::unique_ptr<Table>, kMaxLevel + 1> le_;
  std::array<std::unique_ptr<Table>, kMaxLevel + 1> band_;
};

// argmin over masked functions of sum_cells [N f^2 - 2 f S + Q]; ties go to
// the lowest function id. Equals brute-force record-by-record least squares.
int least_squares_fit(const FunctionClass& fc, const Mask& candidates, const CellStats& stats,
                      FilterSpec filter);

// sum_cells N (f - g)^2 under the filter.
double filtered_distance(const FunctionClass& fc, int f_id, int g_id, const CellStats& stats,
                         FilterSpec filter);

// W = sum b_l (r_l - f_fit)^2, the cumulative variance estimator of the
// filtered residuals.
double cumulative_variance_estimate(const FunctionClass& fc, int fit_id, const CellStats& stats,
                                    FilterSpec filter);

// Nonincreasing upper-bound sequence for an unknown constant variance:
//   sigma_hat^2_t = min(prev, 2 W_t/(t-1) + C B^2 log(t|F|/delta') / (t-1)).
// sigma_hat^2_1 = B^2 by definition; this update requires t >= 2.
double sigma_hat_update(double prev_sq, double w_all, long t, double bound, int num_functions,
                        double delta_prime, double c);

}  // namespace sols
