#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "crem/batch.hpp"
#include "crem/estimators.hpp"
#include "crem/io.hpp"

using namespace crem;
using namespace crem::estimators;

namespace {

CovarianceProfile lin() {
  return CovarianceProfile::validate({{0, 0}, {1, 1}}, 0.5, 0.0, 1.0);
}

constexpr double kBetaCLin = 1.1774100225154747;

}  // namespace

TEST_CASE("negative moment at beta=0 is exactly one") {
  const MomentEstimate e = estimate_neg_moment(lin(), 10, 0.0, 1.5, 500, 7);
  CHECK(e.mean == 1.0);
  CHECK(e.stderr_ == 0.0);
  CHECK(e.warn.empty());
}

TEST_CASE("negative moment respects the convexity lower bound") {
  // E[W^{-s}] >= E[W]^{-s} = 1 for the normalized partition sum W.
  const MomentEstimate e =
      estimate_neg_moment(lin(), 12, 0.5 * kBetaCLin, 1.0, 20000, 11);
  CHECK(e.mean >= 1.0 - 3.0 * e.stderr_);
  CHECK(e.stderr_ > 0.0);
}

TEST_CASE("estimates are identical across thread counts") {
  const MomentEstimate a = estimate_neg_moment(lin(), 10, 0.6, 1.0, 4000, 99, 1);
  const MomentEstimate b = estimate_neg_moment(lin(), 10, 0.6, 1.0, 4000, 99, 4);
  CHECK(a.mean == b.mean);
  CHECK(a.stderr_ == b.stderr_);
  const MomentEstimate c = estimate_left_tail(lin(), 10, 2, 0.6, 0.5, 4000, 99, 1);
  const MomentEstimate d = estimate_left_tail(lin(), 10, 2, 0.6, 0.5, 4000, 99, 4);
  CHECK(c.mean == d.mean);
  CHECK(c.stderr_ == d.stderr_);
}

TEST_CASE("left tail at beta=0 never fires and reports the zero-hit bound") {
  const MomentEstimate e = estimate_left_tail(lin(), 10, 0, 0.0, 0.5, 1000, 3);
  CHECK(e.mean == 0.0);
  CHECK(e.stderr_ == 0.0);
  CHECK(e.warn.rfind("zero-hits", 0) == 0);
}

TEST_CASE("left tail is strictly inside (0,1) below criticality") {
  for (int k : {0, 3}) {
    const MomentEstimate e =
        estimate_left_tail(lin(), 12, k, 0.5 * kBetaCLin, 0.5, 20000, 17);
    CHECK(e.mean > 0.0);
    CHECK(e.mean < 1.0 - 3.0 * e.stderr_);
  }
}

TEST_CASE("left tail is monotone in the threshold") {
  const double b = 0.9 * kBetaCLin;
  const MomentEstimate lo = estimate_left_tail(lin(), 10, 0, b, 0.3, 20000, 23);
  const MomentEstimate mid = estimate_left_tail(lin(), 10, 0, b, 0.5, 20000, 23);
  const MomentEstimate hi = estimate_left_tail(lin(), 10, 0, b, 0.7, 20000, 23);
  CHECK(lo.mean <= mid.mean);
  CHECK(mid.mean <= hi.mean);
}

TEST_CASE("free energy at beta=0 is exactly log 2") {
  const MomentEstimate e = estimate_free_energy(lin(), 12, 0.0, 200, 5);
  CHECK(e.mean == doctest::Approx(std::numbers::ln2).epsilon(1e-14));
  CHECK(e.stderr_ == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("normalized maximum of two standard gaussians") {
  // N=1: E[max(X_1, X_2)] = 1/sqrt(pi).
  const MomentEstimate e = estimate_max(lin(), 1, 20000, 29);
  CHECK(std::abs(e.mean - 1.0 / std::sqrt(std::numbers::pi)) < 3.0 * e.stderr_);
}

TEST_CASE("one-level bootstrap inequality holds at desk scale") {
  const BootstrapCheck chk = bootstrap_inequality_check(lin(), 12, 0, 0.5 * kBetaCLin,
                                                        0.5, 0.5, 20000, 31);
  CHECK(chk.holds);
  CHECK(chk.rhs >= 0.0);
  CHECK(chk.lhs.mean <= chk.rhs + 3.0 * std::hypot(chk.lhs.stderr_, chk.rhs_se));
}

TEST_CASE("batch config round-trips through serialization") {
  const std::string text = R"({
    "profile": "p.json",
    "quantity": "negmoment",
    "reps": 100,
    "seed": 5,
    "grid": [
      {"n": 8, "k": 0, "beta": 0.5, "s": 1.0},
      {"n": 10, "k": 2, "beta": 0.7, "s": 2.0}
    ]
  })";
  const batch::ExperimentConfig cfg = batch::parse_config(text);
  CHECK(cfg.quantity == batch::Quantity::NegMoment);
  CHECK(cfg.reps == 100);
  CHECK(cfg.grid.size() == 2);
  CHECK(cfg.grid[1].s_or_eps == 2.0);
  const std::string once = batch::serialize_config(cfg);
  const std::string twice = batch::serialize_config(batch::parse_config(once));
  CHECK(once == twice);
}

TEST_CASE("batch config validation names the offending row") {
  const std::string bad = R"({
    "profile": "p.json", "quantity": "lefttail", "reps": 10, "seed": 1,
    "grid": [{"n": 8, "k": 9, "beta": 0.5, "eps": 0.5}]
  })";
  CHECK_THROWS_WITH_AS(batch::parse_config(bad), doctest::Contains("row 0"),
                       ConfigParseError);
  CHECK_THROWS_AS(batch::parse_config("{"), ConfigParseError);
}

TEST_CASE("batch runs are deterministic and exact at beta=0") {
  const char* ppath = "test-batch-profile.json";
  {
    std::ofstream out(ppath);
    out << io::profile_to_json(lin());
  }
  batch::ExperimentConfig cfg;
  cfg.profile_path = ppath;
  cfg.quantity = batch::Quantity::NegMoment;
  cfg.reps = 200;
  cfg.seed = 77;
  cfg.grid = {{8, 0, 0.0, 1.0}, {10, 0, 0.6, 1.0}};
  const std::string csv1 = batch::run_batch(cfg, 1);
  const std::string csv8 = batch::run_batch(cfg, 8);
  CHECK(csv1 == csv8);
  CHECK(csv1.rfind("quantity,profile_hash,N,k,beta,s_or_eps,reps,seed,mean,stderr,warn", 0) ==
        0);
  // beta = 0 row reports mean exactly 1 with zero standard error.
  CHECK(csv1.find(",1,0,") != std::string::npos);
  std::remove(ppath);
}

TEST_CASE("profile json round-trips") {
  const auto p = lin();
  const CovarianceProfile q = io::parse_profile_json(io::profile_to_json(p));
  CHECK(p.digest() == q.digest());
  CHECK(io::profile_digest_hex(p) == io::profile_digest_hex(q));
}
