#include "sols/eluder.hpp"

#include <algorithm>
#include <cmath>

namespace sols {

std::vector<DomainPoint> full_domain(const FunctionClass& fc) {
  std::vector<DomainPoint> d;
  d.reserve(fc.num_cells());
  for (int x = 0; x < fc.num_contexts; ++x) {
    for (int a = 0; a < fc.num_actions; ++a) d.push_back({x, a});
  }
  return d;
}

namespace {

std::vector<int> masked_ids(const Mask& mask) {
  std::vector<int> ids;
  for (int f = 0; f < mask.size(); ++f) {
    if (mask.test(f)) ids.push_back(f);
  }
  return ids;
}

// Pair table over the masked functions: signed gap per domain point. All
// comparisons run in the squared domain so the DFS and the definition-level
// check agree bit for bit.
struct PairTable {
  std::vector<std::pair<int, int>> ids;    // function id pairs (lo, hi)
  std::vector<std::vector<double>> gap;    // [pair][point], signed
  std::vector<std::vector<double>> gap_sq; // [pair][point]

  PairTable(const FunctionClass& fc, const Mask& mask, const std::vector<DomainPoint>& domain) {
    const auto funcs = masked_ids(mask);
    const int m = static_cast<int>(funcs.size());
    for (int p = 0; p < m; ++p) {
      for (int q = p + 1; q < m; ++q) {
        ids.emplace_back(funcs[p], funcs[q]);
        std::vector<double> g(domain.size()), g2(domain.size());
        for (std::size_t k = 0; k < domain.size(); ++k) {
          const double d =
              fc.value(funcs[p], domain[k].context, domain[k].action) -
              fc.value(funcs[q], domain[k].context, domain[k].action);
          g[k] = d;
          g2[k] = d * d;
        }
        gap.push_back(std::move(g));
        gap_sq.push_back(std::move(g2));
      }
    }
  }

  std::size_t count() const { return ids.size(); }
};

struct DfsSearch {
  const PairTable& pairs;
  const std::vector<DomainPoint>& domain;
  double eps_sq;
  long node_budget;

  std::vector<double> sq;            // per-pair squared prefix discrepancy
  int alive = 0;
  long nodes = 0;

  std::vector<int> path;             // domain indices of the current sequence
  std::vector<EluderWitness> path_witness;
  int best = 0;
  std::vector<int> best_path;
  std::vector<EluderWitness> best_witness;

  DfsSearch(const PairTable& p, const std::vector<DomainPoint>& d, double e2, long budget)
      : pairs(p), domain(d), eps_sq(e2), node_budget(budget) {
    sq.assign(pairs.count(), 0.0);
    alive = static_cast<int>(pairs.count());
  }

  // A witnessing pair accrues a squared gap above eps_sq the moment its
  // element joins the prefix, so every extension kills at least one live
  // pair: depth + alive bounds everything reachable from here.
  void run(int depth) {
    if (++nodes > node_budget) {
      throw BudgetError("eluder search exceeded its node budget; refusing to approximate");
    }
    if (depth > best) {
      best = depth;
      best_path = path;
      best_witness = path_witness;
    }
    if (depth + alive <= best) return;

    for (std::size_t k = 0; k < domain.size(); ++k) {
      int witness = -1;
      for (std::size_t p = 0; p < pairs.count(); ++p) {
        if (sq[p] <= eps_sq && pairs.gap_sq[p][k] > eps_sq) {
          witness = static_cast<int>(p);
          break;
        }
      }
      if (witness < 0) continue;  // k is eps-dependent on the current prefix

      // Extend with k, updating per-pair sums and the alive count.
      int killed = 0;
      for (std::size_t p = 0; p < pairs.count(); ++p) {
        const bool was_alive = sq[p] <= eps_sq;
        sq[p] += pairs.gap_sq[p][k];
        if (was_alive && sq[p] > eps_sq) ++killed;
      }
      alive -= killed;

      EluderWitness w;
      const auto [lo, hi] = pairs.ids[witness];
      const bool forward = pairs.gap[witness][k] > 0;
      w.g = forward ? lo : hi;
      w.g_prime = forward ? hi : lo;
      w.gap = std::abs(pairs.gap[witness][k]);
      w.prefix_discrepancy = std::sqrt(sq[witness] - pairs.gap_sq[witness][k]);
      path.push_back(static_cast<int>(k));
      path_witness.push_back(w);

      run(depth + 1);

      path.pop_back();
      path_witness.pop_back();
      alive += killed;
      for (std::size_t p = 0; p < pairs.count(); ++p) sq[p] -= pairs.gap_sq[p][k];
    }
  }
};

void check_budget(const Mask& mask, const std::vector<DomainPoint>& domain,
                  const EluderBudget& budget) {
  if (static_cast<int>(domain.size()) > budget.max_domain) {
    throw BudgetError("eluder domain larger than the exhaustive-search budget");
  }
  if (mask.count() > budget.max_functions) {
    throw BudgetError("eluder function set larger than the exhaustive-search budget");
  }
}

}  // namespace

bool is_eps_dependent(const FunctionClass& fc, const Mask& mask, DomainPoint z,
                      const std::vector<DomainPoint>& prefix, double eps,
                      EluderWitness* witness) {
  const auto funcs = masked_ids(mask);
  const double eps_sq = eps * eps;
  for (std::size_t i = 0; i < funcs.size(); ++i) {
    for (std::size_t j = i + 1; j < funcs.size(); ++j) {
      double rss = 0.0;
      for (const auto& zp : prefix) {
        const double d =
            fc.value(funcs[i], zp.context, zp.action) - fc.value(funcs[j], zp.context, zp.action);
        rss += d * d;
      }
      if (rss > eps_sq) continue;
      const double gap = fc.value(funcs[i], z.context, z.action) -
                         fc.value(funcs[j], z.context, z.action);
      if (gap * gap > eps_sq) {
        if (witness != nullptr) {
          witness->g = gap > 0 ? funcs[i] : funcs[j];
          witness->g_prime = gap > 0 ? funcs[j] : funcs[i];
          witness->gap = std::abs(gap);
          witness->prefix_discrepancy = std::sqrt(rss);
        }
        return false;
      }
    }
  }
  return true;
}

std::pair<int, EluderCertificate> nonmonotone_eluder_dim(const FunctionClass& fc, const Mask& mask,
                                                         const std::vector<DomainPoint>& domain,
                                                         double eps, const EluderBudget& budget) {
  if (eps <= 0) throw std::invalid_argument("eluder: eps must be positive");
  check_budget(mask, domain, budget);

  PairTable pairs(fc, mask, domain);
  DfsSearch search(pairs, domain, eps * eps, budget.max_nodes);
  search.run(0);

  EluderCertificate cert;
  cert.epsilon_prime = eps;
  for (int k : search.best_path) cert.sequence.push_back(domain[static_cast<std::size_t>(k)]);
  cert.witnesses = search.best_witness;
  return {search.best, std::move(cert)};
}

std::pair<int, EluderCertificate> eluder_dim(const FunctionClass& fc, const Mask& mask,
                                             const std::vector<DomainPoint>& domain, double eps,
                                             const EluderBudget& budget) {
  if (eps <= 0) throw std::invalid_argument("eluder: eps must be positive");
  check_budget(mask, domain, budget);

  std::vector<double> grid{eps};
  {
    const auto funcs = masked_ids(mask);
    std::vector<double> gaps;
    for (std::size_t i = 0; i < funcs.size(); ++i) {
      for (std::size_t j = i + 1; j < funcs.size(); ++j) {
        for (const auto& z : domain) {
          const double g = std::abs(fc.value(funcs[i], z.context, z.action) -
                                    fc.value(funcs[j], z.context, z.action));
          if (g >= eps) gaps.push_back(g);
        }
      }
    }
    std::sort(gaps.begin(), gaps.end());
    gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());
    for (double g : gaps) grid.push_back(g * (1.0 - 1e-9));
  }

  int best = -1;
  EluderCertificate best_cert;
  for (double eps_prime : grid) {
    auto [dim, cert] = nonmonotone_eluder_dim(fc, mask, domain, eps_prime, budget);
    if (dim > best) {
      best = dim;
      best_cert = std::move(cert);
    }
  }
  return {best, std::move(best_cert)};
}

}  // namespace sols
