#include "sols/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <thread>

namespace sols {

namespace {

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

SweepResult run_sweep(const RunConfig& base, const std::vector<std::uint64_t>& seeds,
                      const std::vector<PolicyKind>& policies, int parallel) {
  {
    std::vector<std::uint64_t> sorted = seeds;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ConfigError("sweep seeds must be distinct");
    }
  }
  if (parallel < 1) parallel = 1;

  struct Job {
    PolicyKind policy;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (PolicyKind p : policies) {
    for (std::uint64_t s : seeds) jobs.push_back({p, s});
  }

  SweepResult sweep;
  sweep.horizon = base.horizon;
  sweep.cells.resize(jobs.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      SweepCell& cell = sweep.cells[i];
      cell.policy = jobs[i].policy;
      cell.seed = jobs[i].seed;
      try {
        RunConfig cfg = base;
        cfg.policy = jobs[i].policy;
        cfg.seed = jobs[i].seed;
        cell.result = run_once(cfg);
        cell.regret_q1 = cell.result.regret_at(std::max<long>(1, base.horizon / 4));
        cell.regret_q2 = cell.result.regret_at(std::max<long>(1, base.horizon / 2));
        cell.regret_final = cell.result.final_regret;
        cell.optimism_clean = cell.result.optimism_clean();
        cell.degeneracy_events = cell.result.degeneracy_events;
        cell.invariant_failures = cell.result.invariant_failures;
        cell.ok = true;
      } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
      }
    }
  };

  std::vector<std::thread> pool;
  for (int w = 0; w < parallel; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::sort(sweep.cells.begin(), sweep.cells.end(), [](const SweepCell& a, const SweepCell& b) {
    const std::string an = policy_name(a.policy), bn = policy_name(b.policy);
    return an != bn ? an < bn : a.seed < b.seed;
  });

  for (PolicyKind p : policies) {
    PolicyAggregate agg;
    agg.policy = p;
    std::vector<double> q1, q2, fin;
    int clean = 0;
    for (const auto& cell : sweep.cells) {
      if (cell.policy != p) continue;
      ++agg.runs;
      if (!cell.ok) {
        ++agg.failed;
        continue;
      }
      q1.push_back(cell.regret_q1);
      q2.push_back(cell.regret_q2);
      fin.push_back(cell.regret_final);
      clean += cell.optimism_clean ? 1 : 0;
      agg.degeneracy_total += cell.degeneracy_events;
    }
    agg.median_q1 = median(q1);
    agg.mean_q1 = mean(q1);
    agg.median_q2 = median(q2);
    agg.mean_q2 = mean(q2);
    agg.median_final = median(fin);
    agg.mean_final = mean(fin);
    const int succeeded = agg.runs - agg.failed;
    agg.optimism_coverage = succeeded > 0 ? static_cast<double>(clean) / succeeded : 0.0;
    sweep.aggregates.push_back(agg);
  }
  std::sort(sweep.aggregates.begin(), sweep.aggregates.end(),
            [](const PolicyAggregate& a, const PolicyAggregate& b) {
              return policy_name(a.policy) < policy_name(b.policy);
            });
  return sweep;
}

std::map<std::string, double> audit_optimism(const SweepResult& sweep) {
  std::map<std::string, double> coverage;
  for (const auto& agg : sweep.aggregates) {
    coverage[policy_name(agg.policy)] = agg.optimism_coverage;
  }
  return coverage;
}

void write_sweep_summary(const SweepResult& sweep, std::ostream& out) {
  out << "#schema=1\n";
  out << "#cells\n";
  out << "policy,seed,status,regret_t4,regret_t2,regret_T,optimism_clean,degeneracy_events\n";
  for (const auto& c : sweep.cells) {
    out << policy_name(c.policy) << ',' << c.seed << ',' << (c.ok ? "ok" : "failed") << ','
        << fmt(c.regret_q1) << ',' << fmt(c.regret_q2) << ',' << fmt(c.regret_final) << ','
        << (c.optimism_clean ? 1 : 0) << ',' << c.degeneracy_events << '\n';
  }
  out << "#aggregates\n";
  out << "policy,runs,failed,median_regret_t4,mean_regret_t4,median_regret_t2,mean_regret_t2,"
         "median_regret_T,mean_regret_T,optimism_coverage,degeneracy_total\n";
  for (const auto& a : sweep.aggregates) {
    out << policy_name(a.policy) << ',' << a.runs << ',' << a.failed << ',' << fmt(a.median_q1)
        << ',' << fmt(a.mean_q1) << ',' << fmt(a.median_q2) << ',' << fmt(a.mean_q2) << ','
        << fmt(a.median_final) << ',' << fmt(a.mean_final) << ',' << fmt(a.optimism_coverage)
        << ',' << a.degeneracy_total << '\n';
  }
}

void write_sweep_files(const SweepResult& sweep, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  for (const auto& cell : sweep.cells) {
    if (!cell.ok) continue;
    write_run_csv_file(cell.result,
                       (std::filesystem::path(out_dir) / run_csv_name(cell.result)).string());
  }
  std::ofstream out(std::filesystem::path(out_dir) / "summary.csv", std::ios::binary);
  if (!out) throw ConfigError("cannot write sweep summary in " + out_dir);
  write_sweep_summary(sweep, out);
}

}  // namespace sols
