#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crem/partition.hpp"
#include "crem/profile.hpp"

namespace crem::bounds {

/// Barrier slope/offset that makes the first-moment lower bound 7/10 hold:
/// a = (log 2 - beta^2 Ahat'(0)/2) / (2 beta),
/// b = (Ahat'(0)/a) log(10 max{e^{-a^2/(2 Ahat'(0))}/(1-e^{-a^2/(2 Ahat'(0))}), 1}).
BarrierParams recommended_ab(const CovarianceProfile& profile, double beta);

/// Decay rate of the pair sum: c = log 2 - beta^2 Ahat'(0)/2 - beta a, > 0.
double small_c(const CovarianceProfile& profile, double beta, double a);

struct Schedule {
  int K;        // floor(2 log_gamma N)
  long long K1; // K^2
};
Schedule schedule(int N, double gamma);

struct HnLn {
  double hN;  // C (1 + 2^alpha) K^{1+alpha} / N
  double LN;  // c K^2 - Ahat'(0) K
};
HnLn hN_LN(const CovarianceProfile& profile, int N, double gamma, double c);

/// log of C = e^{1+beta b}/(1-e^{-c}) + e^{-1+beta b} e^{-c}/(1-e^{-c});
/// carried in the log domain since beta*b can exceed 700 nats.
double log_second_moment_constant(double beta, double b, double c);

/// eta_0 = 1 - 4/(100 C) from the Paley-Zygmund step; degenerate (== 1 in
/// doubles) when log C is large.
double eta0_from_C(double C);
double eta0_from_log_C(double log_C);

/// log of the one-level negative-moment constant at order s:
/// exp(beta^2 s^2 (Ahat'(0)+1)/2) 2^s exp(beta^2 s (Ahat'(0)+1)/2).
double log_one_step_constant(double ahat0, double beta, double s);

/// The bootstrap thresholds and tail probabilities, in the log domain:
/// log eta_k = gamma^k log eta_0 and
/// s log eps_k = -s log 2 - k log C + (1/10) sum_{n<k} log(eta_n^{gamma/2} - eta_n).
struct Sequences {
  std::vector<double> log_eps;  // length K+1, log_eps[0] = -log 2
  std::vector<double> log_eta;  // length K+1
};
Sequences bootstrap_sequences(double eta0, double gamma, double log_C_onestep, double s,
                              int K);

/// Partial sums of eps_{k+1}^{-s} eta_k, k = 0..K-1, log domain with linear
/// views (linear values may overflow to inf for huge constants).
struct SummabilityReport {
  std::vector<double> log_terms;
  std::vector<double> log_partial_sums;
  std::vector<double> partial_sums;
};
SummabilityReport summability_check(const Sequences& seqs, double s);

struct GaussianTail {
  double integral;  // int_r^inf e^{-y^2/2} dy, via erfc
  double bound;     // e^{-r^2/2}/r
};
GaussianTail gaussian_tail(double r);

/// Threshold of the single-particle tail step:
/// r(N) = -(log eps_K + N log 2 + N beta^2/2 + N beta s) / (beta sqrt(N)).
double rN(int N, double beta, double s, double log_epsK);

/// Every explicit constant of the proof pipeline for one (profile, beta, s, N).
struct BoundLedger {
  double beta = 0.0;
  double s = 0.0;
  double gamma = 0.0;
  int K = 0;
  long long K1 = 0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double hN = 0.0;
  double LN = 0.0;
  double log_C_second = 0.0;
  double eta0_analytic = 0.0;
  std::optional<double> eta0_empirical;  // left-tail estimate at eps = 1/2
  double log_C_onestep = 0.0;            // at moment order 10 s
  Sequences sequences;                   // driven by eta0 per eta0_source
  std::string eta0_source;               // "analytic" | "empirical" | "degenerate"
  double r_N = 0.0;                      // 0 when sequences are unavailable
};

BoundLedger make_ledger(const CovarianceProfile& profile, double beta, double s, int N,
                        double gamma, bool empirical_eta0, std::size_t reps,
                        std::uint64_t seed);

}  // namespace crem::bounds
