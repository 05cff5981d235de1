#include "crem/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "crem/kernels.hpp"

namespace crem {

double log_sum_exp(std::span<const double> xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : xs) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

LogValue log_partition_leaves(std::span<const double> leaves, double beta) {
  if (leaves.empty()) return LogValue::zero();
  const double m = kernels::max_value(leaves.data(), leaves.size());
  if (!std::isfinite(m)) return LogValue::zero();
  const double s = kernels::sum_exp_scaled(leaves.data(), leaves.size(), beta, m);
  return LogValue::from_log(beta * m + std::log(s));
}

LogValue log_partition(const TreeSample& sample, double beta) {
  if (beta < 0.0) throw DomainError("beta must be nonnegative");
  return log_partition_leaves(sample.leaves(), beta);
}

LogValue log_expected_partition(const CovarianceProfile& profile, int N, int k, double beta) {
  if (k < 0 || k > N) throw DomainError("offset k must lie in [0, N]");
  if (k == N) return LogValue::from_log(0.0);
  const double depth = N - k;
  const double var = N * (1.0 - profile.eval(static_cast<double>(k) / N));
  return LogValue::from_log(depth * std::numbers::ln2 + 0.5 * beta * beta * var);
}

LogValue log_truncated_partition(const CovarianceProfile& profile, const TreeSample& sample,
                                 double beta, const BarrierParams& barrier) {
  if (sample.node_values.size() != sample.node_count())
    throw MissingInternalNodes("sample does not retain all internal node values");
  const int depth = sample.depth;
  const int k = sample.offset;
  const int N = depth + k;
  std::vector<double> threshold(static_cast<std::size_t>(depth) + 1);
  const double base = profile.eval(static_cast<double>(k) / N);
  for (int n = 1; n <= depth; ++n) {
    threshold[n] = beta * N * (profile.eval(static_cast<double>(n + k) / N) - base) +
                   barrier.a * n + barrier.b;
  }
  // Depth-first with early pruning: a barrier hit removes the whole subtree.
  std::vector<double> surviving;
  struct Frame {
    int d;
    std::size_t j;
  };
  std::vector<Frame> stack{{1, 0}, {1, 1}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    const double x = sample.value(f.d, f.j);
    if (x > threshold[f.d]) continue;
    if (f.d == depth) {
      surviving.push_back(beta * x);
    } else {
      stack.push_back({f.d + 1, 2 * f.j});
      stack.push_back({f.d + 1, 2 * f.j + 1});
    }
  }
  return LogValue::from_log(log_sum_exp(surviving));
}

double one_step_residual(const TreeSample& sample, double beta) {
  const LogValue direct = log_partition(sample, beta);
  const int depth = sample.depth;
  auto leaves = sample.leaves();
  const std::size_t half = leaves.size() / 2;
  double parts[2];
  for (int u = 0; u < 2; ++u) {
    const double xu = sample.value(1, static_cast<std::size_t>(u));
    std::vector<double> shifted(half);
    for (std::size_t i = 0; i < half; ++i) shifted[i] = leaves[u * half + i] - xu;
    if (depth == 1) {
      parts[u] = beta * xu;  // degenerate: the level-1 node is the leaf
    } else {
      parts[u] = beta * xu + log_partition_leaves(shifted, beta).log;
    }
  }
  const double recomposed = log_sum_exp({parts, 2});
  return std::abs(direct.log - recomposed);
}

}  // namespace crem
