#pragma once

#include <limits>
#include <span>

#include "crem/profile.hpp"
#include "crem/sampler.hpp"

namespace crem {

/// Natural-log magnitude with a representable log 0.
struct LogValue {
  double log = -std::numeric_limits<double>::infinity();

  static LogValue zero() { return {}; }
  static LogValue from_log(double v) { return {v}; }
  bool is_zero() const { return log == -std::numeric_limits<double>::infinity(); }
};

/// Max-shifted log-sum-exp; -inf on an empty or all -inf input.
double log_sum_exp(std::span<const double> xs);

/// Slope/offset of the linear part of the truncating barrier: a path survives
/// if X^(k) at depth n stays below beta*N*(A((n+k)/N) - A(k/N)) + a*n + b.
struct BarrierParams {
  double a;
  double b;
};

/// log of Z = sum over leaves of exp(beta * X_u).
LogValue log_partition(const TreeSample& sample, double beta);

/// Same, over a bare leaf-value buffer.
LogValue log_partition_leaves(std::span<const double> leaves, double beta);

/// Closed form log E[Z^(k)] = (N-k) log 2 + (beta^2 N / 2)(1 - A(k/N)).
LogValue log_expected_partition(const CovarianceProfile& profile, int N, int k, double beta);

/// Truncated partition sum: leaves whose whole ancestral path stays below the
/// barrier. May be log 0 if no leaf survives; that is a valid sample value.
LogValue log_truncated_partition(const CovarianceProfile& profile, const TreeSample& sample,
                                 double beta, const BarrierParams& barrier);

/// |log Z - log sum_{|u|=1} e^{beta X_u} Z^u| on one realization; an algebraic
/// identity, so the residual is pure floating-point noise.
double one_step_residual(const TreeSample& sample, double beta);

}  // namespace crem
