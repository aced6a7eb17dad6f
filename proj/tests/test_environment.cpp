#include <doctest.h>

#include <cmath>

#include "sols/environment.hpp"

using namespace sols;

namespace {

EnvironmentSpec base_spec() {
  EnvironmentSpec spec;
  spec.fclass.num_functions = 1;
  spec.fclass.num_contexts = 2;
  spec.fclass.num_actions = 2;
  spec.fclass.bound = 1.0;
  spec.fclass.values = {0.5, 0.2, 0.9, 0.1};
  spec.truth_id = 0;
  spec.horizon = 10;
  spec.noise.kind = NoiseKind::zero;
  spec.noise.schedule = VarianceSchedule::constant_sigma(0.0);
  return spec;
}

}  // namespace

TEST_CASE("cycle and listed context processes") {
  EnvironmentSpec spec = base_spec();
  Rng rng(1);

  spec.contexts = {ContextKind::cycle, {0, 1}};
  CHECK(sample_context(spec, 1, rng) == 0);
  CHECK(sample_context(spec, 2, rng) == 1);
  CHECK(sample_context(spec, 3, rng) == 0);

  spec.contexts = {ContextKind::listed, {1, 0}};
  CHECK(sample_context(spec, 2, rng) == 0);
}

TEST_CASE("iid context draws replay under the same stream seed") {
  EnvironmentSpec spec = base_spec();
  spec.fclass.num_contexts = 4;
  spec.fclass.values = {0.5, 0.2, 0.9, 0.1, 0.0, 0.3, 0.4, 0.6};
  spec.contexts.kind = ContextKind::iid_uniform;

  Rng a(stream_seed(99, StreamTag::context));
  Rng b(stream_seed(99, StreamTag::context));
  for (long t = 1; t <= 50; ++t) {
    const int xa = sample_context(spec, t, a);
    CHECK(xa == sample_context(spec, t, b));
    CHECK(xa >= 0);
    CHECK(xa < 4);
  }
}

TEST_CASE("zero noise returns the mean exactly") {
  EnvironmentSpec spec = base_spec();
  Rng rng(5);
  auto draw = sample_reward(spec, 1, 0, 0, rng);
  CHECK(draw.reward == 0.5);
  CHECK(draw.truth_mean == 0.5);
  CHECK(draw.sigma == 0.0);
}

TEST_CASE("rademacher support is {mean - sigma, mean + sigma}") {
  EnvironmentSpec spec = base_spec();
  spec.noise.kind = NoiseKind::rademacher;
  spec.noise.schedule = VarianceSchedule::constant_sigma(0.1);
  Rng rng(5);
  bool saw_up = false, saw_down = false;
  for (int i = 0; i < 100; ++i) {
    auto draw = sample_reward(spec, 1, 0, 0, rng);
    CHECK((draw.reward == doctest::Approx(0.4) || draw.reward == doctest::Approx(0.6)));
    saw_up = saw_up || draw.reward > 0.5;
    saw_down = saw_down || draw.reward < 0.5;
  }
  CHECK(saw_up);
  CHECK(saw_down);
}

TEST_CASE("rademacher moments match sigma_t^2 at Monte Carlo scale") {
  EnvironmentSpec spec = base_spec();
  spec.noise.kind = NoiseKind::rademacher;
  spec.noise.schedule = VarianceSchedule::constant_sigma(0.1);
  Rng rng(2024);

  const int n = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    auto draw = sample_reward(spec, 1, 0, 0, rng);
    const double xi = draw.reward - draw.truth_mean;
    sum += xi;
    sum_sq += xi * xi;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  // empirical mean within 4 sigma / sqrt(N) of zero
  CHECK(std::abs(mean) <= 4.0 * 0.1 / std::sqrt(static_cast<double>(n)));
  // variance within 5 relative percent of 0.01
  CHECK(var >= 0.0095);
  CHECK(var <= 0.0105);
}

TEST_CASE("truncated gaussian stays inside [-B, B] and its variance is measured") {
  EnvironmentSpec spec = base_spec();
  spec.noise.kind = NoiseKind::truncated_gaussian;
  spec.noise.schedule = VarianceSchedule::constant_sigma(0.8);
  Rng rng(17);
  double sum_sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    auto draw = sample_reward(spec, 1, 0, 0, rng);
    const double xi = draw.reward - draw.truth_mean;
    CHECK(std::abs(xi) <= spec.fclass.bound);
    sum_sq += xi * xi;
  }
  const double realized = sum_sq / n;
  // rejection inside [-B, B] shrinks the nominal variance; it must never grow
  CHECK(realized < 0.8 * 0.8);
  CHECK(realized > 0.2);
}

TEST_CASE("rademacher sigma above B is a configuration error") {
  EnvironmentSpec spec = base_spec();
  spec.noise.kind = NoiseKind::rademacher;
  spec.noise.schedule = VarianceSchedule::constant_sigma(1.5);
  CHECK_THROWS_AS(validate_environment(spec), ConfigError);
}

TEST_CASE("variance schedules") {
  auto listed = VarianceSchedule::from_list({0.1, 0.1, 0.0});
  CHECK(listed.sigma_at(1) == 0.1);
  CHECK(listed.sigma_at(3) == 0.0);
  CHECK_THROWS_AS(listed.sigma_at(4), ConfigError);

  auto phased = VarianceSchedule::from_phases({{5, 0.2}, {10, 0.05}});
  CHECK(phased.sigma_at(5) == 0.2);
  CHECK(phased.sigma_at(6) == 0.05);
  CHECK(phased.sigma_at(10) == 0.05);
  CHECK_THROWS_AS(phased.sigma_at(11), ConfigError);
  CHECK(phased.max_sigma(10) == 0.2);
}

TEST_CASE("listed schedules shorter than the horizon fail validation") {
  EnvironmentSpec spec = base_spec();
  spec.horizon = 5;
  spec.noise.kind = NoiseKind::rademacher;
  spec.noise.schedule = VarianceSchedule::from_list({0.1, 0.1});
  CHECK_THROWS_AS(validate_environment(spec), ConfigError);
}
