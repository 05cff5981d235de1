#pragma once

#include <cstdint>
#include <vector>

#include "crem/partition.hpp"
#include "crem/profile.hpp"

namespace crem::oracles {

/// A point estimate with its standard error (zero for quadrature routes).
struct Estimate {
  double value;
  double se;
};

/// Two estimates agree if |a-b| <= 3 sqrt(se_a^2 + se_b^2).
bool agree(const Estimate& a, const Estimate& b);

enum class Method { Quadrature, MonteCarlo };

/// Direct evaluation of E[e^{beta S_n} 1{S_l <= barrier_l for all l}] by
/// nested quadrature over the walk increments: the innermost integral is a
/// closed-form tilted Gaussian CDF, outer dimensions use 64-node
/// Gauss-Legendre on the barrier-clipped range. Exact route, no tilting.
double tilting_direct_quadrature(const std::vector<double>& variances,
                                 const std::vector<double>& barrier, double beta);

/// Tilted route for the same quantity: exp(beta^2/2 sum var) times the
/// probability that the walk stays below the beta-shifted barrier, the
/// probability by quadrature (n <= 4) or tilted-measure Monte Carlo.
Estimate tilting_expectation(const std::vector<double>& variances,
                             const std::vector<double>& barrier, double beta, Method method,
                             std::size_t reps, std::uint64_t seed);

/// E[truncated Z^(k)] via the walk reduction: 2^{N-k} times the barrier-
/// constrained walk expectation.
Estimate many_to_one_expectation(const CovarianceProfile& profile, int N, int k, double beta,
                                 const BarrierParams& barrier, Method method,
                                 std::size_t reps, std::uint64_t seed);

/// E[(truncated Z^(k))^2] via the pair decomposition over the split depth:
/// 2^{N-k} E[e^{2 beta S} 1_G] + sum_l 2^{2(N-k)-l-1} E[e^{beta(S+S~)} 1].
Estimate many_to_two_expectation(const CovarianceProfile& profile, int N, int k, double beta,
                                 const BarrierParams& barrier, std::size_t reps,
                                 std::uint64_t seed);

/// Independent oracle: Monte Carlo moments of the truncated partition sum
/// over full tree samples (depth at most 12).
Estimate brute_force_tree_moment(const CovarianceProfile& profile, int N, int k, double beta,
                                 const BarrierParams& barrier, int moment, std::size_t reps,
                                 std::uint64_t seed);

/// Closed form E[(M^(k))^{-s}] for the one-level normalized weight
/// M = e^{beta X_1} / E[Z_1]: exp(beta^2 s^2 sigma^2/2) 2^s exp(beta^2 s sigma^2/2).
double one_step_neg_moment(const CovarianceProfile& profile, int N, int k, double beta,
                           double s);

}  // namespace crem::oracles
