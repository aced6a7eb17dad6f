#include "sols/environment.hpp"

#include <cmath>
#include <sstream>

namespace sols {

double VarianceSchedule::sigma_at(long t) const {
  switch (kind) {
    case Kind::constant:
      return sigma;
    case Kind::listed: {
      if (t < 1 || t > static_cast<long>(listed.size())) {
        throw ConfigError("variance schedule shorter than requested round");
      }
      return listed[static_cast<std::size_t>(t - 1)];
    }
    case Kind::phases: {
      for (const auto& [last, s] : phases) {
        if (t <= last) return s;
      }
      throw ConfigError("variance phase schedule does not cover requested round");
    }
  }
  return 0.0;
}

double VarianceSchedule::max_sigma(long horizon) const {
  double m = 0.0;
  for (long t = 1; t <= horizon; ++t) m = std::max(m, sigma_at(t));
  return m;
}

void validate_environment(const EnvironmentSpec& spec) {
  ClassReport report = validate_class(spec.fclass);
  if (!report.ok) throw ConfigError("invalid function class: " + report.message);
  if (spec.truth_id < 0 || spec.truth_id >= spec.fclass.num_functions) {
    throw ConfigError("truth_id out of range");
  }
  if (spec.horizon < 1) throw ConfigError("horizon must be >= 1");
  if (spec.contexts.kind != ContextKind::iid_uniform) {
    if (spec.contexts.sequence.empty()) throw ConfigError("context sequence is empty");
    for (int x : spec.contexts.sequence) {
      if (x < 0 || x >= spec.fclass.num_contexts) throw ConfigError("context id out of range");
    }
    if (spec.contexts.kind == ContextKind::listed &&
        static_cast<long>(spec.contexts.sequence.size()) < spec.horizon) {
      throw ConfigError("listed context sequence shorter than horizon");
    }
  }
  for (long t = 1; t <= spec.horizon; ++t) {
    double s = spec.noise.schedule.sigma_at(t);
    if (s < 0) throw ConfigError("negative sigma in variance schedule");
    if (spec.noise.kind == NoiseKind::rademacher && s > spec.fclass.bound) {
      std::ostringstream os;
      os << "rademacher noise needs sigma_t <= B; got sigma=" << s << " at t=" << t;
      throw ConfigError(os.str());
    }
  }
}

int sample_context(const EnvironmentSpec& spec, long t, Rng& context_rng) {
  switch (spec.contexts.kind) {
    case ContextKind::iid_uniform:
      return static_cast<int>(context_rng.next_below(spec.fclass.num_contexts));
    case ContextKind::cycle: {
      const auto& seq = spec.contexts.sequence;
      return seq[static_cast<std::size_t>((t - 1) % static_cast<long>(seq.size()))];
    }
    case ContextKind::listed:
      return spec.contexts.sequence[static_cast<std::size_t>(t - 1)];
  }
  return 0;
}

RewardDraw sample_reward(const EnvironmentSpec& spec, long t, int x, int a, Rng& noise_rng) {
  const double mean = spec.fclass.value(spec.truth_id, x, a);
  const double sigma = spec.noise.schedule.sigma_at(t);
  const double bound = spec.fclass.bound;
  double xi = 0.0;
  switch (spec.noise.kind) {
    case NoiseKind::zero:
      break;
    case NoiseKind::rademacher:
      if (sigma > bound) throw ConfigError("rademacher sigma exceeds B");
      xi = noise_rng.next_bool() ? sigma : -sigma;
      break;
    case NoiseKind::truncated_gaussian: {
      if (sigma > 0) {
        do {
          xi = sigma * noise_rng.next_gaussian();
        } while (std::abs(xi) > bound);
      }
      break;
    }
  }
  return {mean + xi, mean, sigma};
}

}  // namespace sols
