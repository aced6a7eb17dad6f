#include <doctest.h>

#include <cmath>

#include "sols/regression.hpp"
#include "sols/rng.hpp"

using namespace sols;

namespace {

struct Rec {
  int x, a;
  double r, w;
};

FunctionClass make_class(int nx, int na, std::vector<std::vector<double>> rows, double bound = 1.0) {
  FunctionClass fc;
  fc.num_contexts = nx;
  fc.num_actions = na;
  fc.num_functions = static_cast<int>(rows.size());
  fc.bound = bound;
  for (const auto& r : rows) fc.values.insert(fc.values.end(), r.begin(), r.end());
  return fc;
}

CellStats stats_of(const FunctionClass& fc, const std::vector<Rec>& recs) {
  CellStats stats(fc.num_contexts, fc.num_actions, fc.bound);
  for (const auto& rec : recs) stats.append(rec.x, rec.a, rec.r, rec.w);
  return stats;
}

// Record-loop oracle, independent of the sufficient-statistics path.
bool filter_matches(FilterSpec filter, double w, double bound) {
  switch (filter.kind) {
    case FilterSpec::Kind::all:
      return true;
    case FilterSpec::Kind::width_le:
      return w <= filter.threshold(bound);
    case FilterSpec::Kind::width_band:
      return w > filter.threshold(bound) && w <= FilterSpec::width_le(filter.level - 1).threshold(bound);
  }
  return false;
}

int brute_fit(const FunctionClass& fc, const Mask& mask, const std::vector<Rec>& recs,
              FilterSpec filter) {
  int best = -1;
  double best_obj = 0.0;
  for (int f = 0; f < fc.num_functions; ++f) {
    if (!mask.test(f)) continue;
    double obj = 0.0;
    for (const auto& rec : recs) {
      if (!filter_matches(filter, rec.w, fc.bound)) continue;
      const double d = fc.value(f, rec.x, rec.a) - rec.r;
      obj += d * d;
    }
    if (best < 0 || obj < best_obj) {
      best = f;
      best_obj = obj;
    }
  }
  return best;
}

double brute_distance(const FunctionClass& fc, int f, int g, const std::vector<Rec>& recs,
                      FilterSpec filter) {
  double d = 0.0;
  for (const auto& rec : recs) {
    if (!filter_matches(filter, rec.w, fc.bound)) continue;
    const double diff = fc.value(f, rec.x, rec.a) - fc.value(g, rec.x, rec.a);
    d += diff * diff;
  }
  return d;
}

double brute_w(const FunctionClass& fc, int fit, const std::vector<Rec>& recs, FilterSpec filter) {
  double w = 0.0;
  for (const auto& rec : recs) {
    if (!filter_matches(filter, rec.w, fc.bound)) continue;
    const double d = rec.r - fc.value(fit, rec.x, rec.a);
    w += d * d;
  }
  return w;
}

}  // namespace

TEST_CASE("least_squares_fit picks the squared-error argmin") {
  auto fc = make_class(1, 1, {{0.2}, {0.8}, {0.5}});
  auto stats = stats_of(fc, {{0, 0, 0.75, 0.3}});
  // errors: 0.3025 / 0.0025 / 0.0625
  CHECK(least_squares_fit(fc, Mask::full(3), stats, FilterSpec::all()) == 1);
}

TEST_CASE("empty filtered history ties to the lowest masked id") {
  auto fc = make_class(1, 1, {{0.2}, {0.8}, {0.5}});
  CellStats empty(1, 1, 1.0);
  CHECK(least_squares_fit(fc, Mask::full(3), empty, FilterSpec::all()) == 0);

  Mask oneTwo = Mask::none(3);
  oneTwo.set(1);
  oneTwo.set(2);
  CHECK(least_squares_fit(fc, oneTwo, empty, FilterSpec::all()) == 1);

  // a frozen width above tau empties the width_le(2) sum
  auto stats = stats_of(fc, {{0, 0, 0.75, 0.6}});
  CHECK(least_squares_fit(fc, Mask::full(3), stats, FilterSpec::width_le(2)) == 0);
}

TEST_CASE("least_squares_fit rejects an empty candidate mask") {
  auto fc = make_class(1, 1, {{0.2}});
  CellStats stats(1, 1, 1.0);
  CHECK_THROWS_AS(least_squares_fit(fc, Mask::none(1), stats, FilterSpec::all()),
                  DegenerateSetError);
}

TEST_CASE("filtered_distance single and repeated records") {
  auto fc = make_class(1, 1, {{0.2}, {0.8}});
  CHECK(filtered_distance(fc, 0, 0, stats_of(fc, {{0, 0, 0.5, 0.0}}), FilterSpec::all()) == 0.0);

  auto one = stats_of(fc, {{0, 0, 0.5, 0.0}});
  CHECK(filtered_distance(fc, 0, 1, one, FilterSpec::all()) == doctest::Approx(0.36));
  CHECK(filtered_distance(fc, 1, 0, one, FilterSpec::all()) == doctest::Approx(0.36));

  auto two = stats_of(fc, {{0, 0, 0.5, 0.0}, {0, 0, 0.9, 0.0}});
  CHECK(filtered_distance(fc, 0, 1, two, FilterSpec::all()) == doctest::Approx(0.72));
}

TEST_CASE("cumulative_variance_estimate equals the residual sum") {
  auto fc = make_class(1, 1, {{0.8}});
  auto stats = stats_of(fc, {{0, 0, 0.9, 0.0}, {0, 0, 0.7, 0.0}});
  CHECK(cumulative_variance_estimate(fc, 0, stats, FilterSpec::all()) == doctest::Approx(0.02));

  CellStats empty(1, 1, 1.0);
  CHECK(cumulative_variance_estimate(fc, 0, empty, FilterSpec::all()) == 0.0);

  // realizable deterministic rewards leave no residual
  auto exact = stats_of(fc, {{0, 0, 0.8, 0.0}, {0, 0, 0.8, 0.0}});
  CHECK(cumulative_variance_estimate(fc, 0, exact, FilterSpec::all()) <= 1e-12);
}

TEST_CASE("sigma_hat_update hand values") {
  // sigma_hat^2_1 = B^2 is the caller's initialization
  const double b = 1.0;
  CHECK(b * b == 1.0);

  const double updated = sigma_hat_update(1.0, 0.05, 11, 1.0, 20, 0.05, 1.0);
  CHECK(updated == doctest::Approx(0.01 + std::log(4400.0) / 10.0).epsilon(1e-12));
  CHECK(updated == doctest::Approx(0.8489).epsilon(1e-4));

  CHECK(sigma_hat_update(0.2, 10.0, 5, 1.0, 20, 0.05, 1.0) == 0.2);  // min with previous
  CHECK_THROWS_AS(sigma_hat_update(1.0, 0.0, 1, 1.0, 20, 0.05, 1.0), std::invalid_argument);
}

TEST_CASE("sigma_hat sequence is nonincreasing") {
  Rng rng(8);
  double prev = 1.0;
  double w = 0.0;
  for (long t = 2; t <= 200; ++t) {
    w += 0.01 + 0.005 * rng.next_double();
    const double next = sigma_hat_update(prev, w, t, 1.0, 20, 0.05, 1.0);
    CHECK(next <= prev);
    prev = next;
  }
}

TEST_CASE("sufficient statistics match record loops on random histories") {
  Rng rng(31337);
  for (int trial = 0; trial < 200; ++trial) {
    const int nf = 2 + static_cast<int>(rng.next_below(12));
    const int nx = 1 + static_cast<int>(rng.next_below(4));
    const int na = 1 + static_cast<int>(rng.next_below(4));
    FunctionClass fc = random_class(nf, nx, na, 1.0, rng);

    const int t = 1 + static_cast<int>(rng.next_below(120));
    std::vector<Rec> recs;
    for (int i = 0; i < t; ++i) {
      Rec rec;
      rec.x = static_cast<int>(rng.next_below(nx));
      rec.a = static_cast<int>(rng.next_below(na));
      rec.r = rng.next_double();
      rec.w = rng.next_bool() ? rng.next_double() : 0.0;  // mix zero widths in
      recs.push_back(rec);
    }
    CellStats stats = stats_of(fc, recs);

    std::vector<FilterSpec> filters = {FilterSpec::all()};
    for (int lvl = 0; lvl <= 8; ++lvl) filters.push_back(FilterSpec::width_le(lvl));
    for (int lvl = 1; lvl <= 8; ++lvl) filters.push_back(FilterSpec::band(lvl));

    for (const auto& filter : filters) {
      const int fast = least_squares_fit(fc, Mask::full(nf), stats, filter);
      const int slow = brute_fit(fc, Mask::full(nf), recs, filter);
      CHECK(fast == slow);

      const int f = static_cast<int>(rng.next_below(nf));
      const int g = static_cast<int>(rng.next_below(nf));
      CHECK(filtered_distance(fc, f, g, stats, filter) ==
            doctest::Approx(brute_distance(fc, f, g, recs, filter)).epsilon(1e-9));
      CHECK(cumulative_variance_estimate(fc, fast, stats, filter) ==
            doctest::Approx(brute_w(fc, fast, recs, filter)).epsilon(1e-9));
    }
  }
}

TEST_CASE("cell sums satisfy Cauchy-Schwarz") {
  Rng rng(5);
  FunctionClass fc = random_class(3, 2, 2, 1.0, rng);
  std::vector<Rec> recs;
  for (int i = 0; i < 100; ++i) {
    recs.push_back({static_cast<int>(rng.next_below(2)), static_cast<int>(rng.next_below(2)),
                    rng.next_double(), rng.next_double()});
  }
  CellStats stats = stats_of(fc, recs);
  const auto* tbl = stats.table(FilterSpec::all());
  REQUIRE(tbl != nullptr);
  for (int c = 0; c < stats.num_cells(); ++c) {
    if (tbl->n[c] > 0) CHECK(tbl->q[c] * tbl->n[c] >= tbl->s[c] * tbl->s[c] - 1e-12);
  }
}

TEST_CASE("variance sandwich holds at Monte Carlo scale") {
  // (2/3) W - 11 B^2 ln(4|F|/d) <= sum b sigma^2 <= 2 W + 48 B^2 ln(4|F|/d)
  Rng rng(99);
  const double delta_tilde = 0.1;
  int hold = 0;
  const int reps = 100;
  for (int rep = 0; rep < reps; ++rep) {
    const int nf = 8;
    FunctionClass fc = random_class(nf, 2, 2, 1.0, rng);
    const int truth = static_cast<int>(rng.next_below(nf));
    const int t = 50 + static_cast<int>(rng.next_below(150));

    std::vector<Rec> recs;
    double truth_var_sum = 0.0;
    for (int i = 0; i < t; ++i) {
      const int x = static_cast<int>(rng.next_below(2));
      const int a = static_cast<int>(rng.next_below(2));
      const bool b = rng.next_bool();  // filter decided before the reward
      const double sigma = 0.3 * rng.next_double();
      const double xi = rng.next_bool() ? sigma : -sigma;
      Rec rec{x, a, fc.value(truth, x, a) + xi, b ? 0.0 : fc.bound};
      recs.push_back(rec);
      if (b) truth_var_sum += sigma * sigma;
    }
    CellStats stats = stats_of(fc, recs);
    const FilterSpec filter = FilterSpec::width_le(1);  // selects the b=1 records
    const int fit = least_squares_fit(fc, Mask::full(nf), stats, filter);
    const double w = cumulative_variance_estimate(fc, fit, stats, filter);
    const double lo = (2.0 / 3.0) * w - 11.0 * std::log(4.0 * nf / delta_tilde);
    const double hi = 2.0 * w + 48.0 * std::log(4.0 * nf / delta_tilde);
    if (lo <= truth_var_sum && truth_var_sum <= hi) ++hold;
  }
  CHECK(hold >= static_cast<int>((1.0 - delta_tilde) * reps));
}

TEST_CASE("sigma_hat upper-bounds a constant variance with high probability") {
  Rng rng(123);
  const double sigma = 0.2;
  int covered = 0;
  const int reps = 100;
  for (int rep = 0; rep < reps; ++rep) {
    const int nf = 10;
    FunctionClass fc = random_class(nf, 2, 2, 1.0, rng);
    const int truth = static_cast<int>(rng.next_below(nf));
    CellStats stats(2, 2, 1.0);
    double sigma_hat_sq = 1.0;
    bool ok = true;
    for (long t = 1; t <= 150; ++t) {
      if (t >= 2) {
        const int fit = least_squares_fit(fc, Mask::full(nf), stats, FilterSpec::all());
        const double w = cumulative_variance_estimate(fc, fit, stats, FilterSpec::all());
        sigma_hat_sq = sigma_hat_update(sigma_hat_sq, w, t, 1.0, nf, 0.05, 1.0);
      }
      ok = ok && sigma_hat_sq >= sigma * sigma;
      const int x = static_cast<int>(rng.next_below(2));
      const int a = static_cast<int>(rng.next_below(2));
      const double xi = rng.next_bool() ? sigma : -sigma;
      stats.append(x, a, fc.value(truth, x, a) + xi, 0.5);
    }
    covered += ok ? 1 : 0;
  }
  CHECK(covered >= 95);
}
