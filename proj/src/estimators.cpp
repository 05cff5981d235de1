#include "crem/estimators.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "crem/parallel.hpp"
#include "crem/rng.hpp"

namespace crem::estimators {

namespace {

std::string config_digest(const CovarianceProfile& profile, int N, int k, double beta,
                          const char* tag, double s_or_eps) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "profile=%016llx;N=%d;k=%d;beta=%.17g;%s=%.17g",
                static_cast<unsigned long long>(profile.digest()), N, k, beta, tag,
                s_or_eps);
  return buf;
}

/// Fill vals[r] for every replicate via per-replicate streams, then reduce in
/// index order.
template <class PerRep>
void run_replicates(std::size_t reps, std::uint64_t seed, int threads, PerRep&& per_rep,
                    std::vector<double>& vals) {
  vals.resize(reps);
  parallel_chunks(reps, resolve_threads(threads), [&](std::size_t b, std::size_t e, int) {
    std::vector<double> buffer;
    for (std::size_t r = b; r < e; ++r)
      vals[r] = per_rep(rng::replicate_seed(seed, r), buffer);
  });
}

MomentEstimate reduce(const std::vector<double>& vals, std::uint64_t seed,
                      std::string config) {
  MomentEstimate est;
  est.reps = vals.size();
  est.seed = seed;
  est.config = std::move(config);
  double sum = 0.0, maxv = -std::numeric_limits<double>::infinity();
  for (double v : vals) {
    sum += v;
    if (v > maxv) maxv = v;
  }
  const double n = static_cast<double>(vals.size());
  est.mean = sum / n;
  double ss = 0.0;
  for (double v : vals) {
    const double d = v - est.mean;
    ss += d * d;
  }
  est.stderr_ = std::sqrt(ss / (n - 1.0) / n);
  if (sum > 0.0 && maxv > 0.1 * sum && vals.size() >= 100) est.warn = "heavy-tail";
  return est;
}

void check_common(int N, int k, std::size_t reps) {
  if (N - k < 1 || N - k > kMaxTreeDepth)
    throw DepthTooLarge("depth N-k must lie in [1, 26]");
  if (reps < 2) throw DomainError("need at least 2 replicates");
}

}  // namespace

MomentEstimate estimate_neg_moment(const CovarianceProfile& profile, int N, double beta,
                                   double s, std::size_t reps, std::uint64_t seed,
                                   int threads) {
  check_common(N, 0, reps);
  if (!(s > 0.0)) throw DomainError("s must be positive");
  const double log_ez = log_expected_partition(profile, N, 0, beta).log;
  std::vector<double> vals;
  run_replicates(
      reps, seed, threads,
      [&](std::uint64_t rs, std::vector<double>& buffer) {
        fill_leaves(profile, N, 0, rs, buffer);
        const double lz = log_partition_leaves(buffer, beta).log;
        return std::exp(-s * (lz - log_ez));
      },
      vals);
  return reduce(vals, seed, config_digest(profile, N, 0, beta, "s", s));
}

MomentEstimate estimate_left_tail(const CovarianceProfile& profile, int N, int k, double beta,
                                  double epsilon, std::size_t reps, std::uint64_t seed,
                                  int threads) {
  check_common(N, k, reps);
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0,1)");
  const double cut = std::log(epsilon) + log_expected_partition(profile, N, k, beta).log;
  std::vector<double> vals;
  run_replicates(
      reps, seed, threads,
      [&](std::uint64_t rs, std::vector<double>& buffer) {
        fill_leaves(profile, N, k, rs, buffer);
        return log_partition_leaves(buffer, beta).log <= cut ? 1.0 : 0.0;
      },
      vals);
  MomentEstimate est = reduce(vals, seed, config_digest(profile, N, k, beta, "eps", epsilon));
  est.warn.clear();
  if (est.mean == 0.0) {
    // One-sided Clopper-Pearson upper bound at level 0.05 for zero hits.
    const double upper = 1.0 - std::pow(0.05, 1.0 / static_cast<double>(reps));
    char buf[64];
    std::snprintf(buf, sizeof(buf), "zero-hits;cp95_upper=%.6g", upper);
    est.warn = buf;
  }
  return est;
}

MomentEstimate estimate_free_energy(const CovarianceProfile& profile, int N, double beta,
                                    std::size_t reps, std::uint64_t seed, int threads) {
  check_common(N, 0, reps);
  std::vector<double> vals;
  run_replicates(
      reps, seed, threads,
      [&](std::uint64_t rs, std::vector<double>& buffer) {
        fill_leaves(profile, N, 0, rs, buffer);
        return log_partition_leaves(buffer, beta).log / N;
      },
      vals);
  return reduce(vals, seed, config_digest(profile, N, 0, beta, "s", 0.0));
}

MomentEstimate estimate_max(const CovarianceProfile& profile, int N, std::size_t reps,
                            std::uint64_t seed, int threads) {
  check_common(N, 0, reps);
  std::vector<double> vals;
  run_replicates(
      reps, seed, threads,
      [&](std::uint64_t rs, std::vector<double>& buffer) {
        fill_leaves(profile, N, 0, rs, buffer);
        double m = -std::numeric_limits<double>::infinity();
        for (double x : buffer) m = std::max(m, x);
        return m / N;
      },
      vals);
  return reduce(vals, seed, config_digest(profile, N, 0, 0.0, "s", 0.0));
}

BootstrapCheck bootstrap_inequality_check(const CovarianceProfile& profile, int N, int k,
                                          double beta, double c_val, double delta,
                                          std::size_t reps, std::uint64_t seed,
                                          int threads) {
  check_common(N, k, reps);
  if (k > N - 2) throw DomainError("bootstrap check needs k <= N-2");
  BootstrapCheck out;
  out.lhs = estimate_left_tail(profile, N, k, beta, c_val * delta, reps,
                               rng::substream(seed, 1), threads);
  out.next = estimate_left_tail(profile, N, k + 1, beta, c_val, reps,
                                rng::substream(seed, 2), threads);
  // P(M^(k) <= delta) for M = e^{beta X_1}/E[Z_1], X_1 one tree increment.
  {
    const double var1 = profile.increment_variance(N, k, 1);
    const double sd = std::sqrt(var1);
    const double log_ez1 = std::numbers::ln2 + 0.5 * beta * beta * var1;
    const std::uint64_t ws = rng::substream(seed, 3);
    std::vector<double> vals(reps);
    for (std::size_t r = 0; r < reps; ++r) {
      const double x = sd * rng::gaussian_at(rng::replicate_seed(ws, r), 0);
      vals[r] = (beta * x - log_ez1 <= std::log(delta)) ? 1.0 : 0.0;
    }
    out.weight = reduce(vals, ws, config_digest(profile, N, k, beta, "delta", delta));
  }
  const double p_sum = out.next.mean + out.weight.mean;
  out.rhs = p_sum * p_sum;
  out.rhs_se = 2.0 * p_sum * std::hypot(out.next.stderr_, out.weight.stderr_);
  out.holds =
      out.lhs.mean <= out.rhs + 3.0 * std::hypot(out.lhs.stderr_, out.rhs_se);
  return out;
}

}  // namespace crem::estimators
