// solsim: contextual-bandit simulator for the optimistic least-squares
// family. Subcommands: run one seeded experiment, sweep a policy/seed grid,
// compute eluder dimensions, generate class files.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sols/config.hpp"
#include "sols/eluder.hpp"
#include "sols/runner.hpp"
#include "sols/sweep.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
  std::vector<std::uint64_t> seeds;
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    const std::uint64_t lo = std::stoull(spec.substr(0, dots));
    const std::uint64_t hi = std::stoull(spec.substr(dots + 2));
    if (hi < lo) throw sols::ConfigError("seed range is empty: " + spec);
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) seeds.push_back(std::stoull(item));
  if (seeds.empty()) throw sols::ConfigError("no seeds in: " + spec);
  return seeds;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::vector<std::string>& overrides) {
  sols::RunConfig cfg = sols::parse_config_file(config_path);
  for (const auto& line : overrides) sols::apply_config_line(cfg, line);

  const sols::RunResult result = sols::run_once(cfg);
  fs::create_directories(out_dir);
  const fs::path csv = fs::path(out_dir) / sols::run_csv_name(result);
  sols::write_run_csv_file(result, csv.string());
  if (cfg.diagnostics) {
    std::ofstream diag(fs::path(out_dir) / ("diag_" + sols::run_csv_name(result)));
    for (const auto& line : result.diag_lines) diag << line << '\n';
  }

  std::cout << "policy=" << result.policy << " seed=" << result.seed
            << " final_regret=" << result.final_regret
            << " width_sum=" << result.width_sum
            << " optimism_violations=" << result.optimism_violations
            << " degeneracy_events=" << result.degeneracy_events
            << " invariant_failures=" << result.invariant_failures
            << " wall_s=" << result.wall_seconds << '\n';
  std::cout << "wrote " << csv.string() << '\n';
  return (result.degeneracy_events == 0 && result.invariant_failures == 0) ? 0 : 1;
}

int cmd_sweep(const std::string& config_path, const std::string& seeds_spec,
              const std::string& policies_spec, int parallel, const std::string& out_dir,
              const std::vector<std::string>& overrides) {
  sols::RunConfig cfg = sols::parse_config_file(config_path);
  for (const auto& line : overrides) sols::apply_config_line(cfg, line);

  const auto seeds = parse_seeds(seeds_spec);
  std::vector<sols::PolicyKind> policies;
  {
    std::stringstream ss(policies_spec);
    std::string item;
    while (std::getline(ss, item, ',')) policies.push_back(sols::parse_policy(item));
  }
  if (policies.empty()) throw sols::ConfigError("no policies given");

  const sols::SweepResult sweep = sols::run_sweep(cfg, seeds, policies, parallel);
  sols::write_sweep_files(sweep, out_dir);

  long degeneracy = 0, invariant_failures = 0, failed = 0;
  for (const auto& cell : sweep.cells) {
    degeneracy += cell.degeneracy_events;
    invariant_failures += cell.invariant_failures;
    failed += cell.ok ? 0 : 1;
  }
  for (const auto& agg : sweep.aggregates) {
    std::cout << sols::policy_name(agg.policy) << ": runs=" << agg.runs << " failed=" << agg.failed
              << " median_regret_T=" << agg.median_final
              << " optimism_coverage=" << agg.optimism_coverage
              << " degeneracy=" << agg.degeneracy_total << '\n';
  }
  std::cout << "wrote " << out_dir << "/summary.csv\n";
  return (degeneracy == 0 && invariant_failures == 0 && failed == 0) ? 0 : 1;
}

int cmd_eluder(const std::string& class_path, double epsilon, int budget) {
  const sols::FunctionClass fc = sols::load_class(class_path);
  const sols::ClassReport report = sols::validate_class(fc);
  if (!report.ok) {
    std::cerr << "invalid class: " << report.message << '\n';
    return 2;
  }
  sols::EluderBudget eb;
  eb.max_domain = budget;
  const auto domain = sols::full_domain(fc);
  const auto [dim, cert] =
      sols::eluder_dim(fc, sols::Mask::full(fc.num_functions), domain, epsilon, eb);

  std::cout << "eluder_dim(eps=" << epsilon << ") = " << dim << '\n';
  std::cout << "achieved at eps' = " << cert.epsilon_prime << '\n';
  for (std::size_t k = 0; k < cert.sequence.size(); ++k) {
    const auto& z = cert.sequence[k];
    const auto& w = cert.witnesses[k];
    std::cout << "  z_" << (k + 1) << " = (x" << z.context << ",a" << z.action << ")"
              << "  witness f" << w.g << " vs f" << w.g_prime
              << "  prefix_discrepancy=" << w.prefix_discrepancy << "  gap=" << w.gap << '\n';
  }
  return 0;
}

int cmd_gen_class(const std::string& out_path, int functions, int contexts, int actions,
                  double bound, std::uint64_t seed, int truth, double min_gap) {
  sols::Rng rng(sols::stream_seed(seed, sols::StreamTag::class_gen));
  const sols::FunctionClass fc =
      sols::random_class(functions, contexts, actions, bound, rng, truth, min_gap);
  sols::save_class(fc, out_path);
  std::cout << "wrote " << out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimistic least-squares contextual bandit simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", seeds_spec = "1", policies_spec = "ols";
  std::string class_path, gen_out = "class.txt";
  std::vector<std::string> overrides;
  int parallel = 1, budget = 12;
  double epsilon = 0.5, gen_bound = 1.0, gen_min_gap = 0.0;
  int gen_functions = 20, gen_contexts = 5, gen_actions = 5, gen_truth = 0;
  std::uint64_t gen_seed = 1;

  auto* run = app.add_subcommand("run", "run one seeded experiment");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--set", overrides, "config override, e.g. --set seed=7");

  auto* sweep = app.add_subcommand("sweep", "run a policy x seed grid");
  sweep->add_option("--config", config_path, "config file")->required();
  sweep->add_option("--seeds", seeds_spec, "a..b or comma list")->required();
  sweep->add_option("--policies", policies_spec, "comma list")->required();
  sweep->add_option("--parallel", parallel, "worker threads");
  sweep->add_option("--out", out_dir, "output directory");
  sweep->add_option("--set", overrides, "config override");

  auto* eluder = app.add_subcommand("eluder", "brute-force eluder dimension");
  eluder->add_option("--class", class_path, "class file")->required();
  eluder->add_option("--epsilon", epsilon, "eps > 0")->required();
  eluder->add_option("--budget", budget, "max |Z| for exhaustive search");

  auto* gen = app.add_subcommand("gen-class", "write a random class file");
  gen->add_option("--out", gen_out, "output path");
  gen->add_option("--functions", gen_functions, "|F|");
  gen->add_option("--contexts", gen_contexts, "|X|");
  gen->add_option("--actions", gen_actions, "|A|");
  gen->add_option("--bound", gen_bound, "B");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--truth", gen_truth, "truth function id");
  gen->add_option("--min-gap", gen_min_gap, "best-vs-second gap for the truth row");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir, overrides);
    if (sweep->parsed()) {
      return cmd_sweep(config_path, seeds_spec, policies_spec, parallel, out_dir, overrides);
    }
    if (eluder->parsed()) return cmd_eluder(class_path, epsilon, budget);
    if (gen->parsed()) {
      return cmd_gen_class(gen_out, gen_functions, gen_contexts, gen_actions, gen_bound, gen_seed,
                           gen_truth, gen_min_gap);
    }
  } catch (const sols::BudgetError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
