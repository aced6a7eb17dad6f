#include "sols/runner.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sols {

namespace {

// Shortest round-trip formatting; locale-free, so reruns and downstream
// re-aggregation see bit-identical values.
std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("to_chars failed");
  return std::string(buf, ptr);
}

}  // namespace

double RunResult::regret_at(long t) const {
  if (t < 1 || t > static_cast<long>(rows.size())) {
    throw std::out_of_range("regret_at: round out of range");
  }
  return rows[static_cast<std::size_t>(t - 1)].cum_regret;
}

RunResult run_once(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();

  EnvironmentSpec env = build_environment(cfg);
  PolicyParams params = build_policy_params(cfg);
  params.radius.bound = env.fclass.bound;  // the class file wins over cfg.bound
  if (cfg.sigma_known_sq < 0) params.sigma_known_sq = env.fclass.bound * env.fclass.bound;

  Rng context_rng(stream_seed(cfg.seed, StreamTag::context));
  Rng noise_rng(stream_seed(cfg.seed, StreamTag::noise));
  Policy policy(cfg.policy, env.fclass, params, stream_seed(cfg.seed, StreamTag::policy));

  RunResult result;
  result.policy = policy_name(cfg.policy);
  result.seed = cfg.seed;
  result.rows.reserve(static_cast<std::size_t>(env.horizon));

  const double tol = 1e-9;
  double cum_regret = 0.0;
  double noise_sq_sum = 0.0;

  for (long t = 1; t <= env.horizon; ++t) {
    policy.begin_round(t);
    const int x = sample_context(env, t, context_rng);
    const StepDecision decision = policy.choose(t, x);
    const RewardDraw draw = sample_reward(env, t, x, decision.action, noise_rng);
    policy.observe(x, decision.action, draw.reward, decision.width_at_play);

    StepRow row;
    row.t = t;
    row.context = x;
    row.action = decision.action;
    row.reward = draw.reward;
    row.instant_regret = instant_regret(env.fclass, env.truth_id, x, decision.action);
    cum_regret += row.instant_regret;
    row.cum_regret = cum_regret;
    row.width_at_play = decision.width_at_play;
    row.set_size = decision.set_size;
    row.optimism_ok = policy.state().global.test(env.truth_id);
    row.sigma_hat_sq = decision.sigma_hat_sq;
    row.degeneracy = decision.degeneracy_delta > 0;

    if (!row.optimism_ok) ++result.optimism_violations;
    if (is_optimistic(cfg.policy) && row.optimism_ok) {
      const double truth_best = best_mean(env.fclass, env.truth_id, x).second;
      if (decision.upper[static_cast<std::size_t>(decision.action)] + tol < truth_best) {
        ++result.invariant_failures;  // optimism must hold whenever f_star survives
      }
      if (row.instant_regret > row.width_at_play + tol) {
        ++result.invariant_failures;  // width dominates regret under membership
      }
    }

    result.width_sum += row.width_at_play;
    noise_sq_sum += (draw.reward - draw.truth_mean) * (draw.reward - draw.truth_mean);

    if (cfg.diagnostics) {
      std::ostringstream os;
      os << t << ",|G|=" << decision.set_size;
      const auto& st = policy.state();
      for (std::size_t i = 0; i < st.threshold.size(); ++i) {
        os << ",G(tau_" << i << ")=" << st.threshold[i].count();
      }
      for (std::size_t i = 0; i < st.last_radii.size(); ++i) {
        os << ",beta_" << i << "=" << st.last_radii[i];
      }
      os << ",degeneracy=" << (row.degeneracy ? 1 : 0);
      result.diag_lines.push_back(os.str());
    }

    result.rows.push_back(row);
  }

  result.final_regret = cum_regret;
  result.degeneracy_events = policy.degeneracy_events();
  result.realized_noise_variance = noise_sq_sum / static_cast<double>(env.horizon);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

void write_run_csv(const RunResult& result, std::ostream& out) {
  out << "#schema=1\n";
  out << "t,context,action,reward,instant_regret,cum_regret,width_at_play,set_size,"
         "optimism_ok,sigma_hat_sq,degeneracy\n";
  for (const auto& r : result.rows) {
    out << r.t << ',' << r.context << ',' << r.action << ',' << fmt(r.reward) << ','
        << fmt(r.instant_regret) << ',' << fmt(r.cum_regret) << ',' << fmt(r.width_at_play) << ','
        << r.set_size << ',' << (r.optimism_ok ? 1 : 0) << ','
        << (r.sigma_hat_sq >= 0 ? fmt(r.sigma_hat_sq) : std::string()) << ','
        << (r.degeneracy ? 1 : 0) << '\n';
  }
  out << "#final_regret=" << fmt(result.final_regret) << '\n';
  out << "#width_sum=" << fmt(result.width_sum) << '\n';
  out << "#optimism_violations=" << result.optimism_violations << '\n';
  out << "#degeneracy_events=" << result.degeneracy_events << '\n';
  out << "#invariant_failures=" << result.invariant_failures << '\n';
  out << "#realized_noise_variance=" << fmt(result.realized_noise_variance) << '\n';
}

void write_run_csv_file(const RunResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write CSV: " + path);
  write_run_csv(result, out);
}

std::string run_csv_name(const RunResult& result) {
  return "run_" + result.policy + "_" + std::to_string(result.seed) + ".csv";
}

}  // namespace sols
