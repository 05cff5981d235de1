#include "crem/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <sstream>

namespace crem {

namespace {
constexpr double kTol = 1e-12;  // endpoint comparisons on user-supplied decimals
constexpr double kTwoLog2 = 2.0 * std::numbers::ln2;
}  // namespace

CovarianceProfile CovarianceProfile::validate(std::vector<Knot> knots, double holder_alpha,
                                              double holder_C, double x1) {
  if (knots.empty()) throw EndpointViolation("profile requires at least one knot");
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i].x > knots[i - 1].x)) {
      std::ostringstream os;
      os << "knot x values must be strictly increasing (knot " << i << ")";
      throw MonotonicityViolation(os.str());
    }
    if (knots[i].a + kTol < knots[i - 1].a) {
      std::ostringstream os;
      os << "knot values must be nondecreasing (knot " << i << ")";
      throw MonotonicityViolation(os.str());
    }
  }
  if (std::abs(knots.front().x) > kTol || std::abs(knots.front().a) > kTol)
    throw EndpointViolation("first knot must be (0,0)");
  if (std::abs(knots.back().x - 1.0) > kTol || std::abs(knots.back().a - 1.0) > kTol)
    throw EndpointViolation("last knot must be (1,1)");
  if (!(holder_alpha > 0.0 && holder_alpha < 1.0))
    throw DomainError("holder_alpha must lie in (0,1)");
  if (holder_C < 0.0) throw DomainError("holder_C must be nonnegative");
  if (!(x1 > 0.0 && x1 <= 1.0)) throw DomainError("x1 must lie in (0,1]");
  for (std::size_t i = 1; i + 1 < knots.size(); ++i) {
    if (knots[i].x > kTol && knots[i].x < x1 - kTol)
      throw NonlinearNearZero("profile must be a single linear piece on [0, x1]");
  }
  knots.front() = {0.0, 0.0};
  knots.back() = {1.0, 1.0};
  return CovarianceProfile(std::move(knots), holder_alpha, holder_C, x1);
}

namespace {
double interpolate(const std::vector<Knot>& knots, double x) {
  if (x < -kTol || x > 1.0 + kTol) throw DomainError("argument outside [0,1]");
  x = std::clamp(x, 0.0, 1.0);
  auto it = std::lower_bound(knots.begin(), knots.end(), x,
                             [](const Knot& k, double v) { return k.x < v; });
  if (it != knots.end() && it->x == x) return it->a;
  const Knot& hi = *it;
  const Knot& lo = *(it - 1);
  const double t = (x - lo.x) / (hi.x - lo.x);
  return lo.a + t * (hi.a - lo.a);
}
}  // namespace

double CovarianceProfile::eval(double x) const { return interpolate(knots_, x); }

double CovarianceProfile::increment_variance(int N, int k, int n) const {
  if (N < 1 || k < 0 || n < 1 || n > N - k)
    throw DomainError("increment index out of range");
  const double v = N * (eval(static_cast<double>(n + k) / N) -
                        eval(static_cast<double>(n + k - 1) / N));
  return std::max(v, 0.0);
}

std::uint64_t CovarianceProfile::digest() const {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  auto feed = [&h](double d) {
    unsigned char b[sizeof(double)];
    std::memcpy(b, &d, sizeof(double));
    for (unsigned char c : b) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  for (const Knot& k : knots_) {
    feed(k.x);
    feed(k.a);
  }
  feed(holder_alpha_);
  feed(holder_C_);
  feed(x1_);
  return h;
}

double ConcaveHull::eval(double x) const { return interpolate(knots, x); }

ConcaveHull concave_hull(const CovarianceProfile& profile) {
  const auto& pts = profile.knots();
  std::vector<Knot> hull;
  auto cross = [](const Knot& o, const Knot& a, const Knot& b) {
    return (a.x - o.x) * (b.a - o.a) - (a.a - o.a) * (b.x - o.x);
  };
  for (const Knot& p : pts) {
    // Upper hull: pop while the turn is counterclockwise or collinear.
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) >= 0.0)
      hull.pop_back();
    hull.push_back(p);
  }
  ConcaveHull out;
  out.knots = std::move(hull);
  out.slopes.reserve(out.knots.size() - 1);
  for (std::size_t i = 1; i < out.knots.size(); ++i) {
    out.slopes.push_back((out.knots[i].a - out.knots[i - 1].a) /
                         (out.knots[i].x - out.knots[i - 1].x));
  }
  return out;
}

double beta_c(const ConcaveHull& hull) {
  const double slope0 = hull.slope_at_zero();
  if (slope0 <= kTol) throw DegenerateProfile("hull slope at zero is not positive");
  return std::sqrt(kTwoLog2 / slope0);
}

double free_energy_integrand(double x) {
  const double crit = std::sqrt(kTwoLog2);
  if (x < crit) return 0.5 * x * x + std::numbers::ln2;
  return crit * x;
}

double free_energy(const ConcaveHull& hull, double beta) {
  if (beta < 0.0) throw DomainError("beta must be nonnegative");
  double total = 0.0;
  for (std::size_t i = 0; i < hull.slopes.size(); ++i) {
    const double len = hull.knots[i + 1].x - hull.knots[i].x;
    total += len * free_energy_integrand(beta * std::sqrt(std::max(hull.slopes[i], 0.0)));
  }
  return total;
}

double max_growth_rate(const ConcaveHull& hull) {
  double total = 0.0;
  for (std::size_t i = 0; i < hull.slopes.size(); ++i) {
    const double len = hull.knots[i + 1].x - hull.knots[i].x;
    total += len * std::sqrt(std::max(hull.slopes[i], 0.0));
  }
  return std::sqrt(kTwoLog2) * total;
}

NearZeroReport near_zero_check(const CovarianceProfile& profile, double grid_step,
                               std::optional<double> ahat0_override) {
  if (!(grid_step > 0.0)) throw DomainError("grid_step must be positive");
  const double ahat0 =
      ahat0_override ? *ahat0_override : concave_hull(profile).slope_at_zero();
  const double alpha = profile.holder_alpha();
  const double C = profile.holder_C();
  const double x1 = profile.x1();
  NearZeroReport report{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  const int steps = static_cast<int>(std::floor(x1 / grid_step + kTol));
  for (int i = 0; i <= steps; ++i) {
    const double y = std::min(i * grid_step, x1);
    for (int j = 0; j <= steps; ++j) {
      const double z = std::min(j * grid_step, x1);
      const double d = std::abs(y - z);
      const double bound =
          ahat0 * d + C * std::pow(y, alpha) * d + C * std::pow(d, 1.0 + alpha);
      const double slack = bound - std::abs(profile.eval(y) - profile.eval(z));
      if (slack < report.worst_slack) report = {slack, y, z};
    }
  }
  if (report.worst_slack < -kTol) {
    std::ostringstream os;
    os << "near-zero difference bound violated at y=" << report.y << " z=" << report.z
       << " by " << -report.worst_slack;
    throw BoundViolated(os.str());
  }
  return report;
}

}  // namespace crem
