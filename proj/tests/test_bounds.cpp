#include <doctest.h>

#include <cmath>
#include <numbers>

#include "crem/bounds.hpp"

using namespace crem;
using namespace crem::bounds;

namespace {

CovarianceProfile lin() {
  return CovarianceProfile::validate({{0, 0}, {1, 1}}, 0.5, 0.0, 1.0);
}

}  // namespace

TEST_CASE("recommended barrier parameters at beta=1 on the linear profile") {
  const BarrierParams ab = recommended_ab(lin(), 1.0);
  CHECK(ab.a == doctest::Approx(0.096574).epsilon(1e-5));
  // b = (1/a) log(10 * max-branch) with max-branch = e^{-a^2/2}/(1-e^{-a^2/2}).
  const double q = std::exp(-0.5 * ab.a * ab.a);
  const double branch = q / (1.0 - q);
  CHECK(branch > 1.0);
  CHECK(ab.b == doctest::Approx(std::log(10.0 * branch) / ab.a).epsilon(1e-10));
  CHECK(ab.b == doctest::Approx(79.404).epsilon(1e-3));
}

TEST_CASE("barrier construction rejects supercritical temperatures") {
  const double bc = 1.1774100225154747;
  CHECK_THROWS_AS(recommended_ab(lin(), bc), Supercritical);
  CHECK_THROWS_AS(recommended_ab(lin(), bc + 0.1), Supercritical);
  CHECK_NOTHROW(recommended_ab(lin(), bc - 1e-6));
}

TEST_CASE("pair-sum decay rate") {
  CHECK(small_c(lin(), 1.0, 0.096574) == doctest::Approx(0.096574).epsilon(1e-4));
  CHECK(small_c(lin(), 1.0, 0.19) == doctest::Approx(0.003147).epsilon(1e-3));
  CHECK_THROWS_AS(small_c(lin(), 1.0, 0.2), NotPositive);
}

TEST_CASE("level schedule") {
  const Schedule s1 = schedule(100, 1.5);
  CHECK(s1.K == 22);
  CHECK(s1.K1 == 484);
  const Schedule s2 = schedule(2, 1.9);
  CHECK(s2.K == 2);
  CHECK(s2.K1 == 4);
  CHECK_THROWS_AS(schedule(100, 2.5), GammaOutOfRange);
  CHECK_THROWS_AS(schedule(100, 1.1), GammaOutOfRange);
  CHECK_THROWS_AS(schedule(100, 2.0), GammaOutOfRange);
}

TEST_CASE("entropy correction and linear gain at the schedule scale") {
  const HnLn hl = hN_LN(lin(), 100, 1.5, 0.096574);
  // The linear profile has zero Holder constant, so the correction vanishes.
  CHECK(hl.hN == 0.0);
  CHECK(hl.LN == doctest::Approx(0.096574 * 484 - 22.0).epsilon(1e-6));
  CHECK(hl.LN == doctest::Approx(24.742).epsilon(1e-3));
}

TEST_CASE("second-moment constant in and out of the log domain") {
  const double beta = 0.5, b = 1.0, c = 0.1;
  const double direct = std::exp(1.0 + beta * b) / (1.0 - std::exp(-c)) +
                        std::exp(-1.0 + beta * b) * std::exp(-c) / (1.0 - std::exp(-c));
  CHECK(std::exp(log_second_moment_constant(beta, b, c)) ==
        doctest::Approx(direct).epsilon(1e-12));
  CHECK(direct == doctest::Approx(52.86).epsilon(2e-3));
  // Huge beta*b stays finite in the log domain.
  const double big = log_second_moment_constant(1.0, 5000.0, 0.1);
  CHECK(std::isfinite(big));
  CHECK(big == doctest::Approx(1.0 + 5000.0 - std::log1p(-std::exp(-0.1)) +
                               std::log1p(std::exp(-2.0 - 0.1)))
                   .epsilon(1e-10));
  // c -> infinity: only the first branch survives, C -> e^{1+beta b}.
  CHECK(log_second_moment_constant(1.0, 3.0, 1e9) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("initial threshold from the second-moment constant") {
  CHECK(eta0_from_C(1.0) == doctest::Approx(0.96).epsilon(1e-12));
  CHECK(eta0_from_C(4.0) == doctest::Approx(0.99).epsilon(1e-12));
  CHECK(eta0_from_log_C(800.0) == 1.0);  // degenerate in doubles
  CHECK(eta0_from_log_C(std::log(4.0)) == doctest::Approx(0.99).epsilon(1e-12));
}

TEST_CASE("bootstrap sequences reproduce their closed forms") {
  const double eta0 = 0.5, gamma = 1.5, s = 1.0;
  const double log_C = 0.0;  // C = 1
  const Sequences seqs = bootstrap_sequences(eta0, gamma, log_C, s, 25);
  REQUIRE(seqs.log_eta.size() == 26);
  REQUIRE(seqs.log_eps.size() == 26);
  // log eta_k = gamma^k log eta_0.
  for (int k = 0; k <= 25; ++k) {
    CHECK(seqs.log_eta[k] ==
          doctest::Approx(std::pow(gamma, k) * std::log(eta0)).epsilon(1e-12));
  }
  CHECK(std::exp(seqs.log_eta[1]) == doctest::Approx(0.353553).epsilon(1e-6));
  CHECK(std::exp(seqs.log_eta[2]) == doctest::Approx(0.210224).epsilon(1e-6));
  CHECK(std::exp(seqs.log_eps[0]) == doctest::Approx(0.5).epsilon(1e-14));
  // eps_1 = (1/2) (eta_0^{gamma/2} - eta_0)^{1/(10 s)}.
  const double eps1 = 0.5 * std::pow(std::pow(0.5, 0.75) - 0.5, 0.1);
  CHECK(std::exp(seqs.log_eps[1]) == doctest::Approx(eps1).epsilon(1e-12));
  CHECK(std::exp(seqs.log_eps[1]) == doctest::Approx(0.39497).epsilon(1e-4));
  CHECK_THROWS_AS(bootstrap_sequences(1.0, gamma, log_C, s, 5), DegenerateEta);
  CHECK_THROWS_AS(bootstrap_sequences(0.0, gamma, log_C, s, 5), DegenerateEta);
}

TEST_CASE("summability of the bootstrap tail sum") {
  const Sequences seqs = bootstrap_sequences(0.5, 1.5, 0.0, 1.0, 25);
  const SummabilityReport rep = summability_check(seqs, 1.0);
  REQUIRE(rep.log_terms.size() == 25);
  // First term: eps_1^{-1} eta_0.
  CHECK(std::exp(rep.log_terms[0]) ==
        doctest::Approx(0.5 / 0.394967).epsilon(1e-4));
  CHECK(std::exp(rep.log_terms[0]) == doctest::Approx(1.2659).epsilon(2e-4));
  // Cauchy: the last increments are negligible relative to the first term.
  const double last_inc = std::exp(rep.log_terms.back());
  CHECK(last_inc / std::exp(rep.log_terms[0]) < 1e-8);
  CHECK(rep.partial_sums.back() >= rep.partial_sums.front());
  CHECK(std::isfinite(rep.partial_sums.back()));
}

TEST_CASE("bootstrap sequences remain summable near the degenerate corner") {
  const Sequences seqs = bootstrap_sequences(0.999, 1.11, 0.0, 1.0, 140);
  const SummabilityReport rep = summability_check(seqs, 1.0);
  CHECK(std::isfinite(rep.log_partial_sums.back()));
  // Converged: the last increment no longer moves the partial sum.
  const double tail_ratio =
      std::exp(rep.log_terms.back() - rep.log_partial_sums.back());
  CHECK(tail_ratio < 1e-6);
}

TEST_CASE("gaussian tail integral and its elementary bound") {
  const GaussianTail t1 = gaussian_tail(1.0);
  CHECK(t1.integral == doctest::Approx(0.3976897).epsilon(1e-6));
  CHECK(t1.bound == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  const GaussianTail t3 = gaussian_tail(3.0);
  CHECK(t3.integral == doctest::Approx(0.0033838).epsilon(1e-4));
  CHECK(t3.bound == doctest::Approx(std::exp(-4.5) / 3.0).epsilon(1e-12));
  for (double r : {0.1, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0}) {
    const GaussianTail t = gaussian_tail(r);
    CHECK(t.integral <= t.bound);
    CHECK(t.integral > 0.0);
  }
  // The bound is asymptotically tight.
  const GaussianTail t10 = gaussian_tail(10.0);
  CHECK(t10.integral / t10.bound > 0.98);
  CHECK(t10.integral / t10.bound <= 1.0);
  // Independent check of the integral against sqrt(pi/2) erfc(r/sqrt 2).
  for (double r : {1.0, 3.0}) {
    const double ref = std::sqrt(std::numbers::pi / 2.0) * std::erfc(r / std::sqrt(2.0));
    CHECK(gaussian_tail(r).integral == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("single-particle threshold scale") {
  CHECK(rN(16, 1.0, 1.0, -256.0) == doctest::Approx(55.227).epsilon(1e-3));
  CHECK(rN(16, 1.0, 1.0, 0.0) == doctest::Approx(-8.773).epsilon(1e-3));
  // A smaller eps_K pushes the threshold up.
  CHECK(rN(16, 1.0, 1.0, -300.0) > rN(16, 1.0, 1.0, -256.0));
}

TEST_CASE("one-level constant closed form") {
  // exp(beta^2 s^2 (m+1)/2) 2^s exp(beta^2 s (m+1)/2) with m the slope at 0.
  const double v = log_one_step_constant(1.0, 0.5, 2.0);
  const double expect = 0.25 * 4.0 / 2.0 * 2.0 + 2.0 * std::numbers::ln2 +
                        0.25 * 2.0 / 2.0 * 2.0;
  CHECK(v == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("full ledger assembles coherently") {
  const auto p = lin();
  const BoundLedger led = make_ledger(p, 0.6, 1.0, 100, 1.5, false, 0, 0);
  CHECK(led.K == 22);
  CHECK(led.K1 == 484);
  CHECK(led.c > 0.0);
  CHECK(led.a > 0.0);
  CHECK(led.b > 0.0);
  CHECK(led.hN == 0.0);
  CHECK(led.eta0_analytic > 0.0);
  CHECK(led.eta0_analytic <= 1.0);
  CHECK(!led.eta0_empirical.has_value());
  REQUIRE(led.sequences.log_eps.size() == static_cast<std::size_t>(led.K) + 1);
  CHECK((led.eta0_source == "analytic" || led.eta0_source == "degenerate"));
  if (led.eta0_source != "degenerate") CHECK(std::isfinite(led.r_N));
}
