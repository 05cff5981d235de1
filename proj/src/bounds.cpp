#include "crem/bounds.hpp"

#include <cmath>
#include <numbers>

#include "crem/estimators.hpp"

namespace crem::bounds {

namespace {
constexpr double kLog2 = std::numbers::ln2;

double hull_slope0(const CovarianceProfile& profile) {
  return concave_hull(profile).slope_at_zero();
}
}  // namespace

BarrierParams recommended_ab(const CovarianceProfile& profile, double beta) {
  const ConcaveHull hull = concave_hull(profile);
  if (beta >= beta_c(hull))
    throw Supercritical("barrier parameters are defined only for beta < beta_c");
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  const double ahat0 = hull.slope_at_zero();
  const double a = (kLog2 - 0.5 * beta * beta * ahat0) / (2.0 * beta);
  const double e = std::exp(-a * a / (2.0 * ahat0));
  const double b = (ahat0 / a) * std::log(10.0 * std::max(e / (1.0 - e), 1.0));
  return {a, b};
}

double small_c(const CovarianceProfile& profile, double beta, double a) {
  const double c = kLog2 - 0.5 * beta * beta * hull_slope0(profile) - beta * a;
  if (!(c > 0.0)) throw NotPositive("c = log 2 - beta^2 Ahat'(0)/2 - beta a must be positive");
  return c;
}

Schedule schedule(int N, double gamma) {
  if (N < 2) throw DomainError("N must be at least 2");
  if (!(gamma > 1.1 && gamma < 2.0))
    throw GammaOutOfRange("gamma must lie in (11/10, 2)");
  const int K = static_cast<int>(std::floor(2.0 * std::log(static_cast<double>(N)) /
                                            std::log(gamma)));
  return {K, static_cast<long long>(K) * K};
}

HnLn hN_LN(const CovarianceProfile& profile, int N, double gamma, double c) {
  const Schedule sch = schedule(N, gamma);
  const double K = static_cast<double>(sch.K);
  const double alpha = profile.holder_alpha();
  const double hN = profile.holder_C() * (1.0 + std::pow(2.0, alpha)) *
                    std::pow(K, 1.0 + alpha) / N;
  const double LN = c * K * K - hull_slope0(profile) * K;
  return {hN, LN};
}

double log_second_moment_constant(double beta, double b, double c) {
  if (!(c > 0.0)) throw NotPositive("c must be positive");
  const double log_geom = -std::log1p(-std::exp(-c));  // log 1/(1-e^{-c})
  const double t1 = 1.0 + beta * b + log_geom;
  const double t2 = -1.0 + beta * b - c + log_geom;
  const double m = std::max(t1, t2);
  return m + std::log(std::exp(t1 - m) + std::exp(t2 - m));
}

double eta0_from_C(double C) {
  if (!(C >= 1.0)) throw DomainError("C must be at least 1");
  return 1.0 - 4.0 / (100.0 * C);
}

double eta0_from_log_C(double log_C) {
  if (log_C < 0.0) throw DomainError("C must be at least 1");
  return 1.0 - 0.04 * std::exp(-log_C);
}

double log_one_step_constant(double ahat0, double beta, double s) {
  const double v = ahat0 + 1.0;
  return 0.5 * beta * beta * s * s * v + s * kLog2 + 0.5 * beta * beta * s * v;
}

Sequences bootstrap_sequences(double eta0, double gamma, double log_C_onestep, double s,
                              int K) {
  if (!(eta0 > 0.0 && eta0 < 1.0)) throw DegenerateEta("eta0 must lie in (0,1)");
  if (!(gamma > 1.1 && gamma < 2.0))
    throw GammaOutOfRange("gamma must lie in (11/10, 2)");
  if (log_C_onestep < 0.0) throw DomainError("one-step constant must be at least 1");
  if (!(s > 0.0)) throw DomainError("s must be positive");
  Sequences out;
  out.log_eta.resize(static_cast<std::size_t>(K) + 1);
  out.log_eps.resize(static_cast<std::size_t>(K) + 1);
  const double log_eta0 = std::log(eta0);
  double gpow = 1.0;
  for (int k = 0; k <= K; ++k) {
    out.log_eta[k] = gpow * log_eta0;
    gpow *= gamma;
  }
  // log(eta^{gamma/2} - eta) = (gamma/2) log eta + log1p(-eta^{1-gamma/2});
  // stable when eta underflows since 1 - gamma/2 > 0.
  double gap_sum = 0.0;
  out.log_eps[0] = -kLog2;
  for (int k = 1; k <= K; ++k) {
    const double le = out.log_eta[k - 1];
    const double gap = 0.5 * gamma * le + std::log1p(-std::exp((1.0 - 0.5 * gamma) * le));
    gap_sum += gap;
    out.log_eps[k] = (-s * kLog2 - k * log_C_onestep + 0.1 * gap_sum) / s;
  }
  return out;
}

SummabilityReport summability_check(const Sequences& seqs, double s) {
  SummabilityReport report;
  const std::size_t K = seqs.log_eps.size() - 1;
  report.log_terms.reserve(K);
  report.log_partial_sums.reserve(K);
  report.partial_sums.reserve(K);
  double log_sum = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < K; ++k) {
    const double lt = -s * seqs.log_eps[k + 1] + seqs.log_eta[k];
    report.log_terms.push_back(lt);
    const double m = std::max(log_sum, lt);
    log_sum = m + std::log(std::exp(log_sum - m) + std::exp(lt - m));
    report.log_partial_sums.push_back(log_sum);
    report.partial_sums.push_back(std::exp(log_sum));
  }
  return report;
}

GaussianTail gaussian_tail(double r) {
  if (!(r > 0.0)) throw DomainError("r must be positive");
  const double integral =
      std::sqrt(std::numbers::pi / 2.0) * std::erfc(r / std::numbers::sqrt2);
  const double bound = std::exp(-0.5 * r * r) / r;
  return {integral, bound};
}

double rN(int N, double beta, double s, double log_epsK) {
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  return -(log_epsK + N * kLog2 + 0.5 * N * beta * beta + N * beta * s) /
         (beta * std::sqrt(static_cast<double>(N)));
}

BoundLedger make_ledger(const CovarianceProfile& profile, double beta, double s, int N,
                        double gamma, bool empirical_eta0, std::size_t reps,
                        std::uint64_t seed) {
  BoundLedger ledger;
  ledger.beta = beta;
  ledger.s = s;
  ledger.gamma = gamma;
  const BarrierParams ab = recommended_ab(profile, beta);
  ledger.a = ab.a;
  ledger.b = ab.b;
  ledger.c = small_c(profile, beta, ab.a);
  const Schedule sch = schedule(N, gamma);
  ledger.K = sch.K;
  ledger.K1 = sch.K1;
  const HnLn hl = hN_LN(profile, N, gamma, ledger.c);
  ledger.hN = hl.hN;
  ledger.LN = hl.LN;
  ledger.log_C_second = log_second_moment_constant(beta, ledger.b, ledger.c);
  ledger.eta0_analytic = eta0_from_log_C(ledger.log_C_second);
  ledger.log_C_onestep =
      log_one_step_constant(hull_slope0(profile), beta, 10.0 * s);
  if (empirical_eta0) {
    const auto est =
        estimators::estimate_left_tail(profile, N, 0, beta, 0.5, reps, seed, 1);
    ledger.eta0_empirical = est.mean;
  }
  // The analytic eta0 is typically indistinguishable from 1 in doubles; in
  // that case the sequences are driven by the empirical estimate when
  // available, and both constants are reported separately.
  double eta0 = ledger.eta0_analytic;
  ledger.eta0_source = "analytic";
  if (eta0 >= 1.0 - 1e-15) {
    if (ledger.eta0_empirical && *ledger.eta0_empirical > 0.0 &&
        *ledger.eta0_empirical < 1.0) {
      eta0 = *ledger.eta0_empirical;
      ledger.eta0_source = "empirical";
    } else {
      ledger.eta0_source = "degenerate";
      return ledger;
    }
  }
  ledger.sequences = bootstrap_sequences(eta0, gamma, ledger.log_C_onestep, s, ledger.K);
  ledger.r_N = rN(N, beta, s, ledger.sequences.log_eps.back());
  return ledger;
}

}  // namespace crem::bounds
