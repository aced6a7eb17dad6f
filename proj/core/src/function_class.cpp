#include "sols/function_class.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace sols {

ClassReport validate_class(const FunctionClass& fc) {
  if (fc.num_functions < 1 || fc.num_contexts < 1 || fc.num_actions < 1) {
    return {false, "class must have at least one function, context and action"};
  }
  if (static_cast<int>(fc.values.size()) != fc.num_functions * fc.num_cells()) {
    return {false, "value table size does not match declared dimensions"};
  }
  for (int f = 0; f < fc.num_functions; ++f) {
    for (int x = 0; x < fc.num_contexts; ++x) {
      for (int a = 0; a < fc.num_actions; ++a) {
        double v = fc.value(f, x, a);
        if (!(std::abs(v) <= fc.bound)) {
          std::ostringstream os;
          os << "|f" << f << "(x" << x << ",a" << a << ")| = " << std::abs(v)
             << " exceeds bound B = " << fc.bound;
          return {false, os.str()};
        }
      }
    }
  }
  for (int c = 0; c < fc.num_cells(); ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    int arg_lo = 0, arg_hi = 0;
    for (int f = 0; f < fc.num_functions; ++f) {
      double v = fc.value_at(f, c);
      if (v < lo) lo = v, arg_lo = f;
      if (v > hi) hi = v, arg_hi = f;
    }
    if (!(hi - lo <= fc.bound)) {
      std::ostringstream os;
      os << "pairwise gap at (x" << c / fc.num_actions << ",a" << c % fc.num_actions << ") between f"
         << arg_hi << " and f" << arg_lo << " is " << (hi - lo) << " > B = " << fc.bound;
      return {false, os.str()};
    }
  }
  return {true, ""};
}

double width(const FunctionClass& fc, const Mask& mask, int x, int a) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  const int c = fc.cell(x, a);
  for (int f = 0; f < fc.num_functions; ++f) {
    if (!mask.test(f)) continue;
    double v = fc.value_at(f, c);
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo > hi) throw DegenerateSetError("width() consumed an empty mask");
  return hi - lo;
}

std::pair<int, double> best_mean(const FunctionClass& fc, int truth_id, int x) {
  int best = 0;
  double best_v = fc.value(truth_id, x, 0);
  for (int a = 1; a < fc.num_actions; ++a) {
    double v = fc.value(truth_id, x, a);
    if (v > best_v) {
      best_v = v;
      best = a;
    }
  }
  return {best, best_v};
}

FunctionClass load_class(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open class file: " + path);
  FunctionClass fc;
  if (!(in >> fc.num_functions >> fc.num_contexts >> fc.num_actions >> fc.bound)) {
    throw ConfigError("malformed class file header: " + path);
  }
  if (fc.num_functions < 1 || fc.num_contexts < 1 || fc.num_actions < 1) {
    throw ConfigError("class file declares empty dimensions: " + path);
  }
  fc.values.resize(static_cast<std::size_t>(fc.num_functions) * fc.num_cells());
  for (auto& v : fc.values) {
    if (!(in >> v)) throw ConfigError("class file truncated: " + path);
  }
  return fc;
}

void save_class(const FunctionClass& fc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write class file: " + path);
  out.precision(17);
  out << fc.num_functions << ' ' << fc.num_contexts << ' ' << fc.num_actions << ' ' << fc.bound
      << '\n';
  for (int f = 0; f < fc.num_functions; ++f) {
    for (int c = 0; c < fc.num_cells(); ++c) {
      if (c) out << ' ';
      out << fc.value_at(f, c);
    }
    out << '\n';
  }
}

FunctionClass random_class(int num_functions, int num_contexts, int num_actions, double bound,
                           Rng& rng, int truth_id, double min_gap) {
  if (num_functions < 1 || num_contexts < 1 || num_actions < 1 || bound <= 0) {
    throw ConfigError("random_class: dimensions must be positive");
  }
  if (truth_id < 0 || truth_id >= num_functions) throw ConfigError("random_class: bad truth_id");
  if (min_gap > 0 && num_actions < 2) {
    throw ConfigError("random_class: min_gap needs at least two actions");
  }
  FunctionClass fc;
  fc.num_functions = num_functions;
  fc.num_contexts = num_contexts;
  fc.num_actions = num_actions;
  fc.bound = bound;
  fc.values.resize(static_cast<std::size_t>(num_functions) * fc.num_cells());
  for (auto& v : fc.values) v = rng.next_double() * bound;

  if (min_gap > 0) {
    auto gap_ok = [&]() {
      for (int x = 0; x < num_contexts; ++x) {
        double best = -1, second = -1;
        for (int a = 0; a < num_actions; ++a) {
          double v = fc.value(truth_id, x, a);
          if (v > best) {
            second = best;
            best = v;
          } else if (v > second) {
            second = v;
          }
        }
        if (best - second < min_gap) return false;
      }
      return true;
    };
    const int max_tries = 100000;
    int tries = 0;
    while (!gap_ok()) {
      if (++tries > max_tries) {
        throw ConfigError("random_class: could not satisfy min_gap after 100000 redraws");
      }
      for (int c = 0; c < fc.num_cells(); ++c) {
        fc.values[truth_id * fc.num_cells() + c] = rng.next_double() * bound;
      }
    }
  }
  return fc;
}

}  // namespace sols
