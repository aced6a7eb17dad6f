#pragma once

#include <stdexcept>
#include <vector>

#include "sols/function_class.hpp"

namespace sols {

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DomainPoint {
  int context = 0;
  int action = 0;
  bool operator==(const DomainPoint&) const = default;
};

// Full context-action grid of a class.
std::vector<DomainPoint> full_domain(const FunctionClass& fc);

struct EluderWitness {
  int g = -1;       // function ids with g(z) - g_prime(z) > eps'
  int g_prime = -1;
  double prefix_discrepancy = 0.0;  // sqrt of the squared-gap sum over the prefix
  double gap = 0.0;
};

// A longest independent sequence together with, per element, a witness pair
// proving its independence from the predecessors. Verified by replaying
// is_eps_dependent element by element.
struct EluderCertificate {
  double epsilon_prime = 0.0;
  std::vector<DomainPoint> sequence;
  std::vector<EluderWitness> witnesses;
};

struct EluderBudget {
  int max_domain = 12;
  int max_functions = 64;
  long max_nodes = 2'000'000;  // DFS node cap; exceeding it refuses, never approximates
};

// Definition-level dependence check: z is eps-dependent on the prefix iff
// every masked pair (g, g') with sqrt(sum of squared gaps over the prefix)
// <= eps also has g(z) - g'(z) <= eps. Ties at exactly eps are dependent.
// When independent and witness != nullptr, a violating pair is reported.
bool is_eps_dependent(const FunctionClass& fc, const Mask& mask, DomainPoint z,
                      const std::vector<DomainPoint>& prefix, double eps,
                      EluderWitness* witness = nullptr);

// Longest sequence in which every element is eps-independent of its
// predecessors (repetition allowed), by exhaustive DFS with pruning.
std::pair<int, EluderCertificate> nonmonotone_eluder_dim(const FunctionClass& fc, const Mask& mask,
                                                         const std::vector<DomainPoint>& domain,
                                                         double eps,
                                                         const EluderBudget& budget = {});

// max over eps' >= eps of the nonmonotone dimension. The maximum is attained
// on a finite grid: eps itself plus every pairwise gap magnitude >= eps
// nudged just below by a relative 1e-9 (the independence predicate is
// piecewise constant between those critical values).
std::pair<int, EluderCertificate> eluder_dim(const FunctionClass& fc, const Mask& mask,
                                             const std::vector<DomainPoint>& domain, double eps,
                                             const EluderBudget& budget = {});

}  // namespace sols
