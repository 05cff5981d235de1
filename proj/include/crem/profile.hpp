#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "crem/errors.hpp"

namespace crem {

struct Knot {
  double x;  // fraction of the tree depth, in [0,1]
  double a;  // covariance fraction, in [0,1]
};

/// Piecewise-linear covariance function A of the hierarchical field.
///
/// The field on the depth-N binary tree has Cov(X_u, X_v) = N * A(|u^v|/N).
/// Knots are strictly increasing in x and nondecreasing in a, with A(0)=0 and
/// A(1)=1. On [0, x1] the profile is a single linear piece, so the derivative
/// is Holder continuous there with any exponent and constant 0; holder_alpha
/// and holder_C carry the declared regularity metadata for the near-zero
/// difference bound.
class CovarianceProfile {
 public:
  static CovarianceProfile validate(std::vector<Knot> knots, double holder_alpha,
                                    double holder_C, double x1);

  /// Linear interpolation of A at x in [0,1].
  double eval(double x) const;

  /// Variance of the depth-n increment of the offset-k subtree field:
  /// N * (A((n+k)/N) - A((n+k-1)/N)), for 1 <= n <= N-k.
  double increment_variance(int N, int k, int n) const;

  const std::vector<Knot>& knots() const { return knots_; }
  double holder_alpha() const { return holder_alpha_; }
  double holder_C() const { return holder_C_; }
  double x1() const { return x1_; }

  /// FNV-1a hash over knots and metadata, for config digests.
  std::uint64_t digest() const;

 private:
  CovarianceProfile(std::vector<Knot> knots, double alpha, double C, double x1)
      : knots_(std::move(knots)), holder_alpha_(alpha), holder_C_(C), x1_(x1) {}

  std::vector<Knot> knots_;
  double holder_alpha_;
  double holder_C_;
  double x1_;
};

/// Least concave majorant of a profile. Slopes are per-segment and
/// nonincreasing; slopes.front() is the right derivative at 0.
struct ConcaveHull {
  std::vector<Knot> knots;
  std::vector<double> slopes;

  double eval(double x) const;
  double slope_at_zero() const { return slopes.front(); }
};

/// Upper convex hull of the profile knots (monotone chain); exact for
/// piecewise-linear profiles.
ConcaveHull concave_hull(const CovarianceProfile& profile);

/// Static critical inverse temperature sqrt(2 log 2 / hull slope at 0).
double beta_c(const ConcaveHull& hull);

/// Free energy: sum over hull segments of length * f(beta*sqrt(slope)), with
/// f(x) = x^2/2 + log 2 below sqrt(2 log 2) and sqrt(2 log 2)*x above.
double free_energy(const ConcaveHull& hull, double beta);

/// Growth rate of the maximum: sqrt(2 log 2) * sum of length * sqrt(slope).
double max_growth_rate(const ConcaveHull& hull);

/// The two-branch integrand of the free energy.
double free_energy_integrand(double x);

struct NearZeroReport {
  double worst_slack;  // min over the grid of bound minus |A(y)-A(z)|; >= 0
  double y;
  double z;
};

/// Grid check of |A(y)-A(z)| <= Ahat'(0)|y-z| + C y^a |y-z| + C |y-z|^{1+a}
/// on [0,x1]^2. Throws BoundViolated on the first pair exceeding the bound by
/// more than 1e-12. ahat0_override substitutes the declared slope at zero.
NearZeroReport near_zero_check(const CovarianceProfile& profile, double grid_step,
                               std::optional<double> ahat0_override = {});

}  // namespace crem
