#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "sols/function_class.hpp"

using namespace sols;

namespace {

// rows are per-function, cell-major (context-major, action-minor).
FunctionClass make_class(int nx, int na, std::vector<std::vector<double>> rows, double bound = 1.0) {
  FunctionClass fc;
  fc.num_contexts = nx;
  fc.num_actions = na;
  fc.num_functions = static_cast<int>(rows.size());
  fc.bound = bound;
  for (const auto& r : rows) {
    REQUIRE(static_cast<int>(r.size()) == nx * na);
    fc.values.insert(fc.values.end(), r.begin(), r.end());
  }
  return fc;
}

}  // namespace

TEST_CASE("validate_class accepts values in [0,1] with B=1") {
  auto fc = make_class(2, 2, {{0.1, 0.9, 0.5, 0.0}, {1.0, 0.3, 0.2, 0.7}});
  CHECK(validate_class(fc).ok);
}

TEST_CASE("validate_class reports an entry above B") {
  auto fc = make_class(1, 2, {{0.2, 1.5}});
  auto report = validate_class(fc);
  CHECK_FALSE(report.ok);
  CHECK(report.message.find("f0") != std::string::npos);
  CHECK(report.message.find("a1") != std::string::npos);
}

TEST_CASE("validate_class rejects a pairwise gap above B") {
  SUBCASE("gap via out-of-range entry") {
    auto fc = make_class(1, 1, {{0.0}, {1.2}});
    CHECK_FALSE(validate_class(fc).ok);
  }
  SUBCASE("gap with in-range entries") {
    auto fc = make_class(1, 1, {{-0.5}, {0.7}});
    auto report = validate_class(fc);
    CHECK_FALSE(report.ok);
    CHECK(report.message.find("gap") != std::string::npos);
  }
}

TEST_CASE("validate_class rejects empty dimensions") {
  FunctionClass fc;
  CHECK_FALSE(validate_class(fc).ok);
}

TEST_CASE("width is max minus min over the mask") {
  auto fc = make_class(1, 2, {{0.2, 0.8}, {0.8, 0.2}});
  CHECK(width(fc, Mask::full(2), 0, 0) == doctest::Approx(0.6));
  CHECK(width(fc, Mask::singleton(2, 0), 0, 0) == 0.0);

  auto fc3 = make_class(1, 2, {{0.2, 0.8}, {0.8, 0.2}, {0.5, 0.5}});
  CHECK(width(fc3, Mask::full(3), 0, 1) == doctest::Approx(0.6));
}

TEST_CASE("width throws on an empty mask") {
  auto fc = make_class(1, 1, {{0.5}});
  CHECK_THROWS_AS(width(fc, Mask::none(1), 0, 0), DegenerateSetError);
}

TEST_CASE("width is monotone in the mask and bounded by B") {
  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const int nf = 2 + static_cast<int>(rng.next_below(8));
    const int nx = 1 + static_cast<int>(rng.next_below(3));
    const int na = 1 + static_cast<int>(rng.next_below(3));
    FunctionClass fc = random_class(nf, nx, na, 1.0, rng);
    REQUIRE(validate_class(fc).ok);

    Mask small = Mask::none(nf);
    Mask big = Mask::none(nf);
    for (int f = 0; f < nf; ++f) {
      const bool in_big = rng.next_bool();
      big.set(f, in_big);
      small.set(f, in_big && rng.next_bool());
    }
    if (small.empty()) small.set(static_cast<int>(rng.next_below(nf)));
    for (int f = 0; f < nf; ++f) {
      if (small.test(f)) big.set(f);
    }

    for (int x = 0; x < nx; ++x) {
      for (int a = 0; a < na; ++a) {
        CHECK(width(fc, small, x, a) <= width(fc, big, x, a) + 1e-15);
        CHECK(width(fc, Mask::full(nf), x, a) <= fc.bound + 1e-15);
      }
    }
  }
}

TEST_CASE("best_mean returns the argmax action with ties to the lowest id") {
  auto fc = make_class(1, 2, {{0.2, 0.8}});
  CHECK(best_mean(fc, 0, 0) == std::pair<int, double>{1, 0.8});

  auto tie = make_class(1, 2, {{0.5, 0.5}});
  CHECK(best_mean(tie, 0, 0) == std::pair<int, double>{0, 0.5});

  auto three = make_class(1, 3, {{0.3, 0.3, 0.9}});
  CHECK(best_mean(three, 0, 0) == std::pair<int, double>{2, 0.9});
}

TEST_CASE("best_mean argmax is invariant under constant shifts") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    FunctionClass fc = random_class(3, 2, 4, 1.0, rng);
    FunctionClass shifted = fc;
    const double c = rng.next_double() - 0.5;
    for (int cell = 0; cell < fc.num_cells(); ++cell) shifted.values[cell] += c;
    for (int x = 0; x < fc.num_contexts; ++x) {
      CHECK(best_mean(fc, 0, x).first == best_mean(shifted, 0, x).first);
    }
  }
}

TEST_CASE("class files round-trip") {
  Rng rng(11);
  FunctionClass fc = random_class(4, 2, 3, 0.75, rng);
  const auto path = std::filesystem::temp_directory_path() / "sols_class_roundtrip.txt";
  save_class(fc, path.string());
  FunctionClass loaded = load_class(path.string());
  CHECK(loaded.num_functions == fc.num_functions);
  CHECK(loaded.num_contexts == fc.num_contexts);
  CHECK(loaded.num_actions == fc.num_actions);
  CHECK(loaded.bound == fc.bound);
  REQUIRE(loaded.values.size() == fc.values.size());
  for (std::size_t i = 0; i < fc.values.size(); ++i) {
    CHECK(loaded.values[i] == doctest::Approx(fc.values[i]).epsilon(1e-15));
  }
  std::filesystem::remove(path);
}

TEST_CASE("random_class honors min_gap on the truth row") {
  Rng rng(3);
  FunctionClass fc = random_class(6, 3, 4, 1.0, rng, 2, 0.2);
  for (int x = 0; x < fc.num_contexts; ++x) {
    double best = -1, second = -1;
    for (int a = 0; a < fc.num_actions; ++a) {
      const double v = fc.value(2, x, a);
      if (v > best) {
        second = best;
        best = v;
      } else if (v > second) {
        second = v;
      }
    }
    CHECK(best - second >= 0.2);
  }
}
