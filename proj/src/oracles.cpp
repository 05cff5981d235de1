#include "crem/oracles.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "crem/rng.hpp"
#include "crem/sampler.hpp"

namespace crem::oracles {

bool agree(const Estimate& a, const Estimate& b) {
  return std::abs(a.value - b.value) <= 3.0 * std::hypot(a.se, b.se);
}

namespace {

constexpr int kQuadNodes = 64;
constexpr int kMaxQuadDims = 4;

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

struct GaussLegendre {
  std::array<double, kQuadNodes> node;    // on [-1, 1]
  std::array<double, kQuadNodes> weight;

  GaussLegendre() {
    const int n = kQuadNodes;
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
        }
        pp = n * (x * p0 - p1) / (x * x - 1.0);
        const double dx = p0 / pp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      node[i] = -x;
      node[n - 1 - i] = x;
      weight[i] = weight[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
  }
};

const GaussLegendre& gl() {
  static const GaussLegendre g;
  return g;
}

/// F(l, s) = E[ prod_{r>=l} e^{beta Y_r} * 1{prefix-sum constraints} | S_{l-1} = s ].
double nested_integral(const std::vector<double>& variances,
                       const std::vector<double>& barrier, double beta, std::size_t level,
                       double s) {
  const double var = variances[level];
  const double sd = std::sqrt(var);
  const double hi_raw = barrier[level] - s;
  if (level + 1 == variances.size()) {
    // Closed form: int_{-inf}^{hi} phi(y) e^{beta y} dy.
    return std::exp(0.5 * beta * beta * var) * norm_cdf((hi_raw - beta * var) / sd);
  }
  const double center = beta * var;
  const double hi = std::min(hi_raw, center + 12.0 * sd);
  const double lo = std::min(hi_raw, center) - 12.0 * sd;
  if (hi <= lo) return 0.0;
  const auto& g = gl();
  const double mid = 0.5 * (hi + lo);
  const double halfw = 0.5 * (hi - lo);
  const double norm = 1.0 / (sd * std::sqrt(2.0 * std::numbers::pi));
  double total = 0.0;
  for (int i = 0; i < kQuadNodes; ++i) {
    const double y = mid + halfw * g.node[i];
    const double density = norm * std::exp(-0.5 * y * y / var + beta * y);
    total += g.weight[i] * density * nested_integral(variances, barrier, beta, level + 1, s + y);
  }
  return halfw * total;
}

}  // namespace

double tilting_direct_quadrature(const std::vector<double>& variances,
                                 const std::vector<double>& barrier, double beta) {
  if (variances.empty() || variances.size() != barrier.size())
    throw DomainError("variances and barrier must be nonempty and equal length");
  if (variances.size() > kMaxQuadDims)
    throw QuadratureOrderExceeded("quadrature supports at most 4 steps");
  for (double v : variances)
    if (!(v > 0.0)) throw DomainError("all variances must be positive");
  return nested_integral(variances, barrier, beta, 0, 0.0);
}

Estimate tilting_expectation(const std::vector<double>& variances,
                             const std::vector<double>& barrier, double beta, Method method,
                             std::size_t reps, std::uint64_t seed) {
  if (variances.empty() || variances.size() != barrier.size())
    throw DomainError("variances and barrier must be nonempty and equal length");
  for (double v : variances)
    if (!(v > 0.0)) throw DomainError("all variances must be positive");
  const std::size_t n = variances.size();
  double total_var = 0.0;
  std::vector<double> shifted(n);
  double prefix = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total_var += variances[i];
    prefix += variances[i];
    shifted[i] = barrier[i] - beta * prefix;
  }
  const double factor = std::exp(0.5 * beta * beta * total_var);
  if (method == Method::Quadrature) {
    if (n > kMaxQuadDims)
      throw QuadratureOrderExceeded("quadrature supports at most 4 steps");
    return {factor * nested_integral(variances, shifted, 0.0, 0, 0.0), 0.0};
  }
  // Monte Carlo of the shifted-barrier probability; the indicator is bounded,
  // unlike the raw integrand.
  std::size_t hits = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    const std::uint64_t rs = rng::replicate_seed(seed, r);
    double s = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      s += std::sqrt(variances[i]) * rng::gaussian_at(rs, i);
      if (s > shifted[i]) {
        ok = false;
        break;
      }
    }
    hits += ok;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(reps);
  const double se_p = std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
  return {factor * p, factor * se_p};
}

namespace {

std::vector<double> walk_variances(const CovarianceProfile& profile, int N, int k) {
  const int depth = N - k;
  std::vector<double> v(static_cast<std::size_t>(depth));
  for (int n = 1; n <= depth; ++n) v[n - 1] = profile.increment_variance(N, k, n);
  return v;
}

std::vector<double> barrier_levels(const CovarianceProfile& profile, int N, int k,
                                   double beta, const BarrierParams& barrier) {
  const int depth = N - k;
  std::vector<double> g(static_cast<std::size_t>(depth));
  const double base = profile.eval(static_cast<double>(k) / N);
  for (int n = 1; n <= depth; ++n) {
    g[n - 1] = beta * N * (profile.eval(static_cast<double>(n + k) / N) - base) +
               barrier.a * n + barrier.b;
  }
  return g;
}

}  // namespace

Estimate many_to_one_expectation(const CovarianceProfile& profile, int N, int k, double beta,
                                 const BarrierParams& barrier, Method method,
                                 std::size_t reps, std::uint64_t seed) {
  if (N - k < 1) throw DomainError("N-k must be at least 1");
  const auto vars = walk_variances(profile, N, k);
  const auto g = barrier_levels(profile, N, k, beta, barrier);
  const Estimate walk = tilting_expectation(vars, g, beta, method, reps, seed);
  const double count = std::ldexp(1.0, N - k);
  return {count * walk.value, count * walk.se};
}

Estimate many_to_two_expectation(const CovarianceProfile& profile, int N, int k, double beta,
                                 const BarrierParams& barrier, std::size_t reps,
                                 std::uint64_t seed) {
  if (N - k < 1) throw DomainError("N-k must be at least 1");
  const int depth = N - k;
  const auto vars = walk_variances(profile, N, k);
  const auto g = barrier_levels(profile, N, k, beta, barrier);
  std::vector<double> cumvar(static_cast<std::size_t>(depth) + 1, 0.0);
  for (int n = 1; n <= depth; ++n) cumvar[n] = cumvar[n - 1] + vars[n - 1];

  // Diagonal pairs u = w: 2^{N-k} E[e^{2 beta S} 1_G].
  const Estimate diag =
      tilting_expectation(vars, g, 2.0 * beta, Method::MonteCarlo, reps,
                          rng::substream(seed, 0xD1A6));
  double value = std::ldexp(diag.value, depth);
  double var_sum = std::ldexp(diag.se, depth) * std::ldexp(diag.se, depth);

  // Off-diagonal pairs split at depth l. Under the pair tilting, prefix
  // increments shift by 2 beta sigma^2 and post-split increments by
  // beta sigma^2 on each branch; the Laplace factor is
  // exp(beta^2 (V_total + V_l)).
  for (int l = 0; l < depth; ++l) {
    const double factor = std::exp(beta * beta * (cumvar[depth] + cumvar[l]));
    const std::uint64_t ls = rng::substream(seed, static_cast<std::uint64_t>(l) + 1);
    std::size_t hits = 0;
    for (std::size_t r = 0; r < reps; ++r) {
      const std::uint64_t rs = rng::replicate_seed(ls, r);
      double s1 = 0.0, s2 = 0.0;
      bool ok = true;
      for (int n = 1; n <= depth && ok; ++n) {
        const double sd = std::sqrt(vars[n - 1]);
        if (n <= l) {
          const double inc = sd * rng::gaussian_at(rs, 3 * (n - 1)) + 2.0 * beta * vars[n - 1];
          s1 += inc;
          s2 += inc;
        } else {
          s1 += sd * rng::gaussian_at(rs, 3 * (n - 1) + 1) + beta * vars[n - 1];
          s2 += sd * rng::gaussian_at(rs, 3 * (n - 1) + 2) + beta * vars[n - 1];
        }
        ok = s1 <= g[n - 1] && s2 <= g[n - 1];
      }
      hits += ok;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(reps);
    const double se_p = std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
    const double weight = std::ldexp(factor, 2 * depth - l - 1);
    value += weight * p;
    var_sum += (weight * se_p) * (weight * se_p);
  }
  return {value, std::sqrt(var_sum)};
}

Estimate brute_force_tree_moment(const CovarianceProfile& profile, int N, int k, double beta,
                                 const BarrierParams& barrier, int moment, std::size_t reps,
                                 std::uint64_t seed) {
  if (N - k > 12) throw DepthTooLarge("brute-force oracle is limited to depth 12");
  if (moment != 1 && moment != 2) throw DomainError("moment must be 1 or 2");
  if (reps < 2) throw DomainError("need at least 2 replicates");
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t r = 0; r < reps; ++r) {
    const TreeSample tree = sample_tree(profile, N, k, rng::replicate_seed(seed, r));
    const LogValue lz = log_truncated_partition(profile, tree, beta, barrier);
    const double z = lz.is_zero() ? 0.0 : std::exp(lz.log);
    const double v = moment == 1 ? z : z * z;
    sum += v;
    sumsq += v * v;
  }
  const double n = static_cast<double>(reps);
  const double mean = sum / n;
  const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n)};
}

double one_step_neg_moment(const CovarianceProfile& profile, int N, int k, double beta,
                           double s) {
  if (k < 0 || k > N - 1) throw DomainError("k must lie in [0, N-1]");
  if (!(s > 0.0)) throw DomainError("s must be positive");
  const double var = profile.increment_variance(N, k, 1);
  return std::exp(0.5 * beta * beta * s * s * var) * std::pow(2.0, s) *
         std::exp(0.5 * beta * beta * s * var);
}

}  // namespace crem::oracles
