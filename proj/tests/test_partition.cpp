#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "crem/partition.hpp"
#include "crem/rng.hpp"
#include "crem/sampler.hpp"

using namespace crem;

namespace {

CovarianceProfile lin() {
  return CovarianceProfile::validate({{0, 0}, {1, 1}}, 0.5, 0.0, 1.0);
}
CovarianceProfile pw1() {
  return CovarianceProfile::validate({{0, 0}, {0.5, 0.7}, {1, 1}}, 0.5, 0.0, 0.5);
}

}  // namespace

TEST_CASE("log-sum-exp basics") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(log_sum_exp({}) == -inf);
  const std::array<double, 2> all_zero = {-inf, -inf};
  CHECK(log_sum_exp(all_zero) == -inf);
  const std::array<double, 2> pair = {0.0, 0.0};
  CHECK(log_sum_exp(pair) == doctest::Approx(std::numbers::ln2).epsilon(1e-15));
  const std::array<double, 3> mixed = {-inf, 700.0, 700.0};
  CHECK(log_sum_exp(mixed) == doctest::Approx(700.0 + std::numbers::ln2).epsilon(1e-15));
  const std::array<double, 2> huge = {1e4, 1e4};  // would overflow without shifting
  CHECK(log_sum_exp(huge) == doctest::Approx(1e4 + std::numbers::ln2).epsilon(1e-15));
}

TEST_CASE("partition sum at beta=0 counts the leaves exactly") {
  for (int N : {4, 9, 14}) {
    const TreeSample t = sample_tree(lin(), N, 0, 11u + N);
    const LogValue z = log_partition(t, 0.0);
    CHECK(std::abs(z.log - N * std::numbers::ln2) < 1e-12);
  }
}

TEST_CASE("leaf-buffer and tree partition sums agree bitwise") {
  const auto p = pw1();
  const TreeSample t = sample_tree(p, 10, 2, 321);
  std::vector<double> buf;
  fill_leaves(p, 10, 2, 321, buf);
  CHECK(log_partition(t, 0.8).log == log_partition_leaves(buf, 0.8).log);
}

TEST_CASE("partition sum dominates the single largest leaf") {
  const TreeSample t = sample_tree(lin(), 12, 0, 5150);
  double mx = t.leaves()[0];
  for (double v : t.leaves()) mx = std::max(mx, v);
  for (double beta : {0.3, 0.9, 1.5}) {
    CHECK(log_partition(t, beta).log >= beta * mx);
  }
}

TEST_CASE("closed-form expected partition sum fixtures") {
  CHECK(log_expected_partition(lin(), 10, 0, 1.0).log ==
        doctest::Approx(11.931472).epsilon(1e-6));
  CHECK(log_expected_partition(pw1(), 10, 5, 1.0).log ==
        doctest::Approx(4.965736).epsilon(1e-6));
  CHECK(log_expected_partition(lin(), 10, 10, 1.0).log == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(log_expected_partition(lin(), 10, 0, 0.0).log ==
        doctest::Approx(10 * std::numbers::ln2).epsilon(1e-14));
}

TEST_CASE("empirical mean of Z over its expectation is near one below criticality") {
  const auto p = lin();
  const int N = 14;
  const double beta = 1.0;
  const double log_ez = log_expected_partition(p, N, 0, beta).log;
  const int reps = 20000;
  double sum = 0.0, sumsq = 0.0;
  std::vector<double> buf;
  for (int r = 0; r < reps; ++r) {
    fill_leaves(p, N, 0, rng::replicate_seed(601, r), buf);
    const double w = std::exp(log_partition_leaves(buf, beta).log - log_ez);
    sum += w;
    sumsq += w * w;
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sumsq / reps - mean * mean) / reps);
  CHECK(std::abs(mean - 1.0) < 3 * se);
}

TEST_CASE("an inactive barrier leaves the partition sum untouched") {
  const auto p = pw1();
  const TreeSample t = sample_tree(p, 10, 2, 909);
  const BarrierParams wide{1e9, 1e9};
  for (double beta : {0.0, 0.7}) {
    CHECK(log_truncated_partition(p, t, beta, wide).log == log_partition(t, beta).log);
  }
}

TEST_CASE("a barrier below every first-level value kills the whole sum") {
  // Depth-2 tree with both first-level values forced above the barrier
  // a*n + b = 1.001 at n=1 (beta = 0 removes the profile term).
  TreeSample t;
  t.depth = 2;
  t.offset = 0;
  t.seed = 0;
  t.node_values = {2.0, 3.0, 2.5, 2.5, 3.5, 3.5};
  const LogValue z = log_truncated_partition(lin(), t, 0.0, BarrierParams{1.0, 0.001});
  CHECK(z.is_zero());
}

TEST_CASE("truncation only removes mass") {
  const auto p = lin();
  for (int r = 0; r < 50; ++r) {
    const TreeSample t = sample_tree(p, 8, 0, rng::replicate_seed(602, r));
    const double full = log_partition(t, 0.6).log;
    const double trunc = log_truncated_partition(p, t, 0.6, BarrierParams{0.2, 0.5}).log;
    CHECK(trunc <= full + 1e-12);
  }
}

TEST_CASE("one-step decomposition is an identity up to rounding") {
  for (const auto& p : {lin(), pw1()}) {
    for (int N : {6, 12}) {
      for (double beta : {0.0, 0.9}) {
        const TreeSample t = sample_tree(p, N, 0, 4242);
        CHECK(one_step_residual(t, beta) <= 1e-10);
      }
    }
  }
}

TEST_CASE("one-step residual needs internal nodes") {
  TreeSample leaf_only;
  leaf_only.depth = 1;
  leaf_only.offset = 0;
  leaf_only.seed = 0;
  leaf_only.node_values = {0.1, -0.2};
  // Depth 1 has no subtree below the first level; residual must still be tiny.
  CHECK(one_step_residual(leaf_only, 0.5) <= 1e-12);
}
