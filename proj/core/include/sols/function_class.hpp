#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sols/rng.hpp"

namespace sols {

// Raised when a confidence set (or any function mask) is consumed while empty.
class DegenerateSetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Subset of the function class, e.g. a confidence set G_t.
struct Mask {
  std::vector<std::uint8_t> bits;

  static Mask full(int n) { return Mask{std::vector<std::uint8_t>(n, 1)}; }
  static Mask none(int n) { return Mask{std::vector<std::uint8_t>(n, 0)}; }
  static Mask singleton(int n, int id) {
    Mask m = none(n);
    m.bits[id] = 1;
    return m;
  }

  int size() const { return static_cast<int>(bits.size()); }
  bool test(int id) const { return bits[id] != 0; }
  void set(int id, bool value = true) { bits[id] = value ? 1 : 0; }

  int count() const {
    int c = 0;
    for (auto b : bits) c += (b != 0);
    return c;
  }
  bool empty() const { return count() == 0; }

  int lowest() const {
    for (int i = 0; i < size(); ++i)
      if (bits[i]) return i;
    return -1;
  }

  bool is_subset_of(const Mask& other) const {
    for (int i = 0; i < size(); ++i)
      if (bits[i] && !other.bits[i]) return false;
    return true;
  }

  Mask& operator&=(const Mask& other) {
    for (int i = 0; i < size(); ++i) bits[i] = bits[i] & other.bits[i];
    return *this;
  }

  bool operator==(const Mask& other) const { return bits == other.bits; }
};

// Finite table of candidate mean-reward functions over context-action pairs.
// values is function-major, then context-major, action-minor.
struct FunctionClass {
  int num_functions = 0;
  int num_contexts = 0;
  int num_actions = 0;
  double bound = 1.0;  // B
  std::vector<double> values;

  int num_cells() const { return num_contexts * num_actions; }
  int cell(int x, int a) const { return x * num_actions + a; }

  double value(int f, int x, int a) const { return values[f * num_cells() + cell(x, a)]; }
  double value_at(int f, int c) const { return values[f * num_cells() + c]; }

  // Cell-major row for one function.
  const double* row(int f) const { return values.data() + f * num_cells(); }
};

struct ClassReport {
  bool ok = true;
  std::string message;  // names the offending entry when !ok
};

// Checks |f| <= B everywhere and max pairwise gap <= B, plus nonemptiness.
ClassReport validate_class(const FunctionClass& fc);

// Uncertainty radius: max_{f,f' in mask} f(x,a) - f'(x,a). Throws
// DegenerateSetError on an empty mask.
double width(const FunctionClass& fc, const Mask& mask, int x, int a);

// Best action for the given function at a context; ties resolve to the
// lowest action id.
std::pair<int, double> best_mean(const FunctionClass& fc, int truth_id, int x);

// Plain-text class file: header "num_functions num_contexts num_actions B",
// then one row of cell-major values per function.
FunctionClass load_class(const std::string& path);
void save_class(const FunctionClass& fc, const std::string& path);

// Values drawn uniformly in [0, B], which satisfies both boundedness
// conditions by construction. When min_gap > 0 the truth row is redrawn until
// its best action beats the second best by at least min_gap in every context.
FunctionClass random_class(int num_functions, int num_contexts, int num_actions, double bound,
                           Rng& rng, int truth_id = 0, double min_gap = 0.0);

}  // namespace sols
