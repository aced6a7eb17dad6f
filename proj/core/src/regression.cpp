#include "sols/regression.hpp"

#include <cmath>
#include <stdexcept>

namespace sols {

CellStats::CellStats(int num_contexts, int num_actions, double bound)
    : num_cells_(num_contexts * num_actions), num_actions_(num_actions), bound_(bound) {
  if (num_cells_ < 1) throw ConfigError("CellStats: empty context/action grid");
  if (bound_ <= 0) throw ConfigError("CellStats: bound must be positive");
}

CellStats::Table& CellStats::touch(std::unique_ptr<Table>& slot) {
  if (!slot) {
    slot = std::make_unique<Table>();
    slot->n.assign(num_cells_, 0.0);
    slot->s.assign(num_cells_, 0.0);
    slot->q.assign(num_cells_, 0.0);
  }
  return *slot;
}

void CellStats::append(int x, int a, double reward, double width_at_play) {
  const int cell = x * num_actions_ + a;
  if (cell < 0 || cell >= num_cells_) throw ConfigError("CellStats::append: cell out of range");
  if (width_at_play < 0) throw ConfigError("CellStats::append: negative width");
  ++rounds_;

  auto add = [&](std::unique_ptr<Table>& slot) {
    Table& t = touch(slot);
    t.n[cell] += 1.0;
    t.s[cell] += reward;
    t.q[cell] += reward * reward;
    t.any = true;
  };

  add(all_);

  // Count how many thresholds tau_i = B/2^i (halving is exact in binary
  // floating point) the frozen width falls under. The record then lives in
  // band (tau_c0, tau_{c0-1}] and in every width_le bucket below c0.
  int c0 = 0;
  double tau = bound_;
  while (c0 <= kMaxLevel && width_at_play <= tau) {
    ++c0;
    tau *= 0.5;
  }
  for (int i = 0; i < c0 && i <= kMaxLevel; ++i) add(le_[i]);
  if (c0 >= 1 && c0 <= kMaxLevel) add(band_[c0]);
  // c0 == 0: width above B (invalid class data) -> unfiltered sums only.
  // c0 > kMaxLevel: width at or below tau_40 (incl. zero) -> below every band.
}

const CellStats::Table* CellStats::table(FilterSpec filter) const {
  switch (filter.kind) {
    case FilterSpec::Kind::all:
      return all_ && all_->any ? all_.get() : nullptr;
    case FilterSpec::Kind::width_le:
      if (filter.level < 0 || filter.level > kMaxLevel) {
        throw ConfigError("width_le filter level out of range");
      }
      return le_[filter.level] && le_[filter.level]->any ? le_[filter.level].get() : nullptr;
    case FilterSpec::Kind::width_band:
      if (filter.level < 1 || filter.level > kMaxLevel) {
        throw ConfigError("band filter level out of range");
      }
      return band_[filter.level] && band_[filter.level]->any ? band_[filter.level].get() : nullptr;
  }
  return nullptr;
}

int least_squares_fit(const FunctionClass& fc, const Mask& candidates, const CellStats& stats,
                      FilterSpec filter) {
  if (candidates.empty()) throw DegenerateSetError("least_squares_fit: empty candidate mask");
  const CellStats::Table* tbl = stats.table(filter);
  if (tbl == nullptr) return candidates.lowest();  // all objectives are 0; tie-break

  const int cells = stats.num_cells();
  int best = -1;
  double best_obj = 0.0;
  for (int f = 0; f < fc.num_functions; ++f) {
    if (!candidates.test(f)) continue;
    const double* row = fc.row(f);
    double obj = 0.0;
    for (int c = 0; c < cells; ++c) {
      const double v = row[c];
      obj += tbl->n[c] * v * v - 2.0 * v * tbl->s[c] + tbl->q[c];
    }
    if (best < 0 || obj < best_obj) {
      best = f;
      best_obj = obj;
    }
  }
  return best;
}

double filtered_distance(const FunctionClass& fc, int f_id, int g_id, const CellStats& stats,
                         FilterSpec filter) {
  if (f_id == g_id) return 0.0;
  const CellStats::Table* tbl = stats.table(filter);
  if (tbl == nullptr) return 0.0;
  const int cells = stats.num_cells();
  const double* fr = fc.row(f_id);
  const double* gr = fc.row(g_id);
  double d = 0.0;
  for (int c = 0; c < cells; ++c) {
    const double diff = fr[c] - gr[c];
    d += tbl->n[c] * diff * diff;
  }
  return d;
}

double cumulative_variance_estimate(const FunctionClass& fc, int fit_id, const CellStats& stats,
                                    FilterSpec filter) {
  const CellStats::Table* tbl = stats.table(filter);
  if (tbl == nullptr) return 0.0;
  const int cells = stats.num_cells();
  const double* row = fc.row(fit_id);
  double w = 0.0;
  for (int c = 0; c < cells; ++c) {
    const double v = row[c];
    w += tbl->q[c] - 2.0 * v * tbl->s[c] + tbl->n[c] * v * v;
  }
  return w < 0.0 ? 0.0 : w;  // exact value is a sum of squares
}

double sigma_hat_update(double prev_sq, double w_all, long t, double bound, int num_functions,
                        double delta_prime, double c) {
  if (t < 2) throw std::invalid_argument("sigma_hat_update requires t >= 2");
  const double denom = static_cast<double>(t - 1);
  const double candidate =
      2.0 * w_all / denom +
      c * bound * bound * std::log(static_cast<double>(t) * num_functions / delta_prime) / denom;
  return std::min(prev_sq, candidate);
}

}  // namespace sols
