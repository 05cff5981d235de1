#include <doctest.h>

#include <cmath>
#include <numbers>

#include "crem/profile.hpp"

using namespace crem;

namespace {

CovarianceProfile lin() {
  return CovarianceProfile::validate({{0, 0}, {1, 1}}, 0.5, 0.0, 1.0);
}
CovarianceProfile pw1() {
  return CovarianceProfile::validate({{0, 0}, {0.5, 0.7}, {1, 1}}, 0.5, 0.0, 0.5);
}
CovarianceProfile pw2() {
  return CovarianceProfile::validate({{0, 0}, {0.5, 0.3}, {1, 1}}, 0.5, 0.0, 0.5);
}

}  // namespace

TEST_CASE("profile validation accepts the reference profiles") {
  CHECK_NOTHROW(lin());
  CHECK_NOTHROW(pw1());
  CHECK_NOTHROW(pw2());
}

TEST_CASE("profile validation rejects malformed inputs") {
  CHECK_THROWS_AS(CovarianceProfile::validate(
                      {{0, 0}, {0.5, 0.3}, {0.4, 0.5}, {1, 1}}, 0.5, 0.0, 1.0),
                  MonotonicityViolation);
  CHECK_THROWS_AS(CovarianceProfile::validate({{0, 0}, {0.5, 0.7}, {1, 0.6}}, 0.5, 0.0, 1.0),
                  MonotonicityViolation);
  CHECK_THROWS_AS(CovarianceProfile::validate({{0.1, 0}, {1, 1}}, 0.5, 0.0, 1.0),
                  EndpointViolation);
  CHECK_THROWS_AS(CovarianceProfile::validate({{0, 0}, {1, 0.9}}, 0.5, 0.0, 1.0),
                  EndpointViolation);
  // An interior knot strictly inside (0, x1) breaks the single-piece rule.
  CHECK_THROWS_AS(CovarianceProfile::validate({{0, 0}, {0.3, 0.4}, {1, 1}}, 0.5, 0.0, 0.5),
                  NonlinearNearZero);
  CHECK_THROWS_AS(CovarianceProfile::validate({{0, 0}, {1, 1}}, 1.5, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(CovarianceProfile::validate({{0, 0}, {1, 1}}, 0.5, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(CovarianceProfile::validate({{0, 0}, {1, 1}}, 0.5, 0.0, 1.5), DomainError);
}

TEST_CASE("evaluation interpolates linearly between knots") {
  CHECK(lin().eval(0.3) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(pw1().eval(0.25) == doctest::Approx(0.35).epsilon(1e-14));
  CHECK(pw1().eval(1.0) == 1.0);
  CHECK(pw1().eval(0.0) == 0.0);
  CHECK_THROWS_AS(lin().eval(-0.1), DomainError);
  CHECK_THROWS_AS(lin().eval(1.1), DomainError);
}

TEST_CASE("increment variances match the profile differences") {
  CHECK(lin().increment_variance(10, 0, 3) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(pw1().increment_variance(10, 0, 3) == doctest::Approx(1.4).epsilon(1e-13));
  CHECK(pw1().increment_variance(10, 5, 1) == doctest::Approx(0.6).epsilon(1e-13));
  CHECK_THROWS_AS(lin().increment_variance(10, 0, 11), DomainError);
  CHECK_THROWS_AS(lin().increment_variance(10, 3, 8), DomainError);
}

TEST_CASE("increment variances telescope to the total subtree variance") {
  for (const auto& p : {lin(), pw1(), pw2()}) {
    for (int N : {7, 10, 16}) {
      for (int k : {0, 2, 5}) {
        double total = 0.0;
        for (int n = 1; n <= N - k; ++n) total += p.increment_variance(N, k, n);
        const double expect = N * (1.0 - p.eval(static_cast<double>(k) / N));
        CHECK(total == doctest::Approx(expect).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("concave hull of a concave profile is the profile itself") {
  const ConcaveHull h = concave_hull(pw1());
  REQUIRE(h.knots.size() == 3);
  CHECK(h.slopes[0] == doctest::Approx(1.4).epsilon(1e-13));
  CHECK(h.slopes[1] == doctest::Approx(0.6).epsilon(1e-13));
  CHECK(h.slope_at_zero() == doctest::Approx(1.4).epsilon(1e-13));
}

TEST_CASE("concave hull of a convex profile is the straight line") {
  const ConcaveHull h = concave_hull(pw2());
  REQUIRE(h.knots.size() == 2);
  CHECK(h.slopes[0] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("hull dominates the profile with equality at the endpoints") {
  for (const auto& p : {lin(), pw1(), pw2()}) {
    const ConcaveHull h = concave_hull(p);
    for (int i = 0; i <= 100; ++i) {
      const double x = i / 100.0;
      CHECK(h.eval(x) >= p.eval(x) - 1e-12);
    }
    CHECK(h.eval(0.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(h.eval(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("critical inverse temperature fixtures") {
  CHECK(beta_c(concave_hull(lin())) == doctest::Approx(1.177410).epsilon(1e-6));
  CHECK(beta_c(concave_hull(pw1())) == doctest::Approx(0.995093).epsilon(1e-6));
  CHECK(beta_c(concave_hull(pw2())) == doctest::Approx(1.177410).epsilon(1e-6));
}

TEST_CASE("free energy closed forms") {
  const auto hl = concave_hull(lin());
  CHECK(free_energy(hl, 1.0) == doctest::Approx(0.5 + std::numbers::ln2).epsilon(1e-12));
  CHECK(free_energy(hl, 2.0) ==
        doctest::Approx(2.0 * std::sqrt(2.0 * std::numbers::ln2)).epsilon(1e-12));
  CHECK(free_energy(concave_hull(pw1()), 0.5) ==
        doctest::Approx(0.125 + std::numbers::ln2).epsilon(1e-6));
  CHECK(free_energy(hl, 0.0) == std::numbers::ln2);  // exact
}

TEST_CASE("the two branches of the free energy integrand meet continuously") {
  const double xc = std::sqrt(2.0 * std::numbers::ln2);
  CHECK(free_energy_integrand(xc - 1e-13) ==
        doctest::Approx(free_energy_integrand(xc + 1e-13)).epsilon(1e-12));
  CHECK(free_energy_integrand(xc) == doctest::Approx(2.0 * std::numbers::ln2).epsilon(1e-12));
}

TEST_CASE("maximum growth rate fixtures") {
  CHECK(max_growth_rate(concave_hull(lin())) == doctest::Approx(1.177410).epsilon(1e-6));
  CHECK(max_growth_rate(concave_hull(pw1())) == doctest::Approx(1.152573).epsilon(1e-6));
  CHECK(max_growth_rate(concave_hull(pw2())) == doctest::Approx(1.177410).epsilon(1e-6));
}

TEST_CASE("near-zero difference bound holds on the reference profiles") {
  const NearZeroReport r1 = near_zero_check(lin(), 0.01);
  CHECK(r1.worst_slack >= -1e-12);
  CHECK(r1.worst_slack == doctest::Approx(0.0).epsilon(1e-12));
  const NearZeroReport r2 = near_zero_check(pw1(), 0.01);
  CHECK(r2.worst_slack >= -1e-12);
}

TEST_CASE("understating the slope at zero trips the near-zero bound") {
  CHECK_THROWS_AS(near_zero_check(lin(), 0.01, 0.5), BoundViolated);
}

TEST_CASE("profile digest distinguishes profiles and is stable") {
  CHECK(lin().digest() == lin().digest());
  CHECK(lin().digest() != pw1().digest());
  CHECK(pw1().digest() != pw2().digest());
}
