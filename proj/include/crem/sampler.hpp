#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "crem/profile.hpp"
#include "crem/rng.hpp"

namespace crem {

/// One realization of the offset-k subtree field X^(k) on the depth-(N-k)
/// binary tree. Nodes at depths 1..depth, breadth-first: level d occupies
/// indices [2^d - 2, 2^(d+1) - 2), node j's parent is node j/2 one level up.
struct TreeSample {
  int depth;
  int offset;
  std::uint64_t seed;
  std::vector<double> node_values;

  static std::size_t level_base(int d) { return (std::size_t{1} << d) - 2; }
  std::size_t node_count() const { return (std::size_t{2} << depth) - 2; }
  double value(int d, std::size_t j) const { return node_values[level_base(d) + j]; }
  std::span<const double> level(int d) const {
    return {node_values.data() + level_base(d), std::size_t{1} << d};
  }
  std::span<const double> leaves() const { return level(depth); }
};

/// Inhomogeneous random walk S_1..S_{N-k} with the per-depth increment
/// variances of the offset-k subtree field.
struct WalkSample {
  int offset;
  std::uint64_t seed;
  std::vector<double> values;
};

/// Two walks sharing the first `split` increments, independent afterwards.
struct CoupledWalkSample {
  int split;
  std::uint64_t seed;
  std::vector<double> first;
  std::vector<double> second;
};

inline constexpr int kMaxTreeDepth = 26;  // 2^27-2 nodes, ~1 GiB of doubles

TreeSample sample_tree(const CovarianceProfile& profile, int N, int k, std::uint64_t seed);

WalkSample sample_walk(const CovarianceProfile& profile, int N, int k, std::uint64_t seed);

CoupledWalkSample sample_coupled_walks(const CovarianceProfile& profile, int N, int k,
                                       int split, std::uint64_t seed);

/// Leaf values only, via in-place level doubling; buffer is resized to
/// 2^(N-k). Produces exactly the leaf level of sample_tree(profile, N, k,
/// seed) without materializing internal nodes.
void fill_leaves(const CovarianceProfile& profile, int N, int k, std::uint64_t seed,
                 std::vector<double>& buffer);

}  // namespace crem
