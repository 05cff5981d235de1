#include "crem/sampler.hpp"

#include <cmath>

namespace crem {

namespace {

void check_depth(int N, int k) {
  const int depth = N - k;
  if (depth < 1 || depth > kMaxTreeDepth)
    throw DepthTooLarge("tree depth N-k must lie in [1, 26]");
}

std::vector<double> level_sigmas(const CovarianceProfile& profile, int N, int k) {
  const int depth = N - k;
  std::vector<double> sigma(static_cast<std::size_t>(depth) + 1);
  for (int d = 1; d <= depth; ++d)
    sigma[d] = std::sqrt(profile.increment_variance(N, k, d));
  return sigma;
}

}  // namespace

TreeSample sample_tree(const CovarianceProfile& profile, int N, int k, std::uint64_t seed) {
  check_depth(N, k);
  const int depth = N - k;
  const auto sigma = level_sigmas(profile, N, k);
  TreeSample sample{depth, k, seed, {}};
  sample.node_values.resize(sample.node_count());
  auto& v = sample.node_values;
  // Level 1: two children of the (implicit, zero-valued) root.
  v[0] = sigma[1] * rng::gaussian_at(seed, 0);
  v[1] = sigma[1] * rng::gaussian_at(seed, 1);
  for (int d = 2; d <= depth; ++d) {
    const std::size_t parent_base = TreeSample::level_base(d - 1);
    const std::size_t base = TreeSample::level_base(d);
    const std::size_t half = std::size_t{1} << (d - 1);
    const double s = sigma[d];
    for (std::size_t p = 0; p < half; ++p) {
      const double parent = v[parent_base + p];
      v[base + 2 * p] = parent + s * rng::gaussian_at(seed, base + 2 * p);
      v[base + 2 * p + 1] = parent + s * rng::gaussian_at(seed, base + 2 * p + 1);
    }
  }
  return sample;
}

void fill_leaves(const CovarianceProfile& profile, int N, int k, std::uint64_t seed,
                 std::vector<double>& buffer) {
  check_depth(N, k);
  const int depth = N - k;
  const auto sigma = level_sigmas(profile, N, k);
  buffer.resize(std::size_t{1} << depth);
  buffer[0] = sigma[1] * rng::gaussian_at(seed, 0);
  if (depth >= 1) buffer[1] = sigma[1] * rng::gaussian_at(seed, 1);
  for (int d = 2; d <= depth; ++d) {
    const std::size_t base = TreeSample::level_base(d);
    const std::size_t half = std::size_t{1} << (d - 1);
    const double s = sigma[d];
    // Expand in place from the back: children of slot p land at 2p, 2p+1,
    // which never clobbers a parent still to be read.
    for (std::size_t p = half; p-- > 0;) {
      const double parent = buffer[p];
      buffer[2 * p + 1] = parent + s * rng::gaussian_at(seed, base + 2 * p + 1);
      buffer[2 * p] = parent + s * rng::gaussian_at(seed, base + 2 * p);
    }
  }
}

WalkSample sample_walk(const CovarianceProfile& profile, int N, int k, std::uint64_t seed) {
  if (N - k < 1) throw DomainError("walk length N-k must be at least 1");
  const int depth = N - k;
  WalkSample walk{k, seed, {}};
  walk.values.resize(depth);
  double s = 0.0;
  for (int n = 1; n <= depth; ++n) {
    s += std::sqrt(profile.increment_variance(N, k, n)) * rng::gaussian_at(seed, n - 1);
    walk.values[n - 1] = s;
  }
  return walk;
}

CoupledWalkSample sample_coupled_walks(const CovarianceProfile& profile, int N, int k,
                                       int split, std::uint64_t seed) {
  if (N - k < 1) throw DomainError("walk length N-k must be at least 1");
  const int depth = N - k;
  if (split < 0 || split > depth - 1)
    throw SplitOutOfRange("split must lie in [0, N-k-1]");
  CoupledWalkSample out{split, seed, {}, {}};
  out.first.resize(depth);
  out.second.resize(depth);
  double s1 = 0.0, s2 = 0.0;
  for (int n = 1; n <= depth; ++n) {
    const double sd = std::sqrt(profile.increment_variance(N, k, n));
    if (n <= split) {
      const double inc = sd * rng::gaussian_at(seed, 3 * (n - 1));
      s1 += inc;
      s2 += inc;
    } else {
      s1 += sd * rng::gaussian_at(seed, 3 * (n - 1) + 1);
      s2 += sd * rng::gaussian_at(seed, 3 * (n - 1) + 2);
    }
    out.first[n - 1] = s1;
    out.second[n - 1] = s2;
  }
  return out;
}

}  // namespace crem
