#pragma once

#include <cstdint>
#include <string>

#include "crem/partition.hpp"
#include "crem/profile.hpp"

namespace crem::estimators {

/// Monte Carlo estimate with replicate-sample standard error. Identical for
/// identical (inputs, seed) on any thread count: replicate r always draws
/// from the stream derived from (seed, r) and the reduction runs in
/// replicate-index order.
struct MomentEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::string config;  // digest of (profile, N, k, beta, s-or-eps)
  std::string warn;    // empty, "heavy-tail", or "zero-hits;..."
};

/// Mean of W^{-s} = exp(-s (log Z - log E[Z])) over full-tree replicates.
MomentEstimate estimate_neg_moment(const CovarianceProfile& profile, int N, double beta,
                                   double s, std::size_t reps, std::uint64_t seed,
                                   int threads = 0);

/// Fraction of replicates with Z^(k) <= epsilon E[Z^(k)]. Zero-hit runs keep
/// mean 0 but report a one-sided 95% Clopper-Pearson upper bound in warn.
MomentEstimate estimate_left_tail(const CovarianceProfile& profile, int N, int k, double beta,
                                  double epsilon, std::size_t reps, std::uint64_t seed,
                                  int threads = 0);

/// Mean of (1/N) log Z.
MomentEstimate estimate_free_energy(const CovarianceProfile& profile, int N, double beta,
                                    std::size_t reps, std::uint64_t seed, int threads = 0);

/// Mean of (1/N) max over leaves.
MomentEstimate estimate_max(const CovarianceProfile& profile, int N, std::size_t reps,
                            std::uint64_t seed, int threads = 0);

/// The three probabilities of the one-level bootstrap inequality
/// P(Z^(k) <= c d E) <= [P(Z^(k+1) <= c E) + P(M^(k) <= d)]^2,
/// with the comparison at 3 combined standard errors.
struct BootstrapCheck {
  MomentEstimate lhs;       // P(Z^(k) <= c*delta*E[Z^(k)])
  MomentEstimate next;      // P(Z^(k+1) <= c*E[Z^(k+1)])
  MomentEstimate weight;    // P(M^(k) <= delta)
  double rhs = 0.0;         // (next + weight)^2
  double rhs_se = 0.0;
  bool holds = false;
};
BootstrapCheck bootstrap_inequality_check(const CovarianceProfile& profile, int N, int k,
                                          double beta, double c_val, double delta,
                                          std::size_t reps, std::uint64_t seed,
                                          int threads = 0);

}  // namespace crem::estimators
