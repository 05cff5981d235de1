#include "crem/rng.hpp"

namespace crem::rng::detail {

double gaussian_slow_path(std::uint64_t u, int layer, double candidate, bool negative) {
  const auto& t = zig();
  constexpr double R = 3.442619855899;
  // Continuation uniforms come from a stream salted off the counter word, so
  // they never collide with another (stream, index) pair's fast-path word.
  Stream s(fmix64(u ^ 0xA5A5A5A55A5A5A5AULL));
  double x = candidate;
  for (;;) {
    if (layer == 0) {
      // Tail beyond R, Marsaglia's method.
      double xx, yy;
      do {
        xx = -std::log(s.next_unit()) / R;
        yy = -std::log(s.next_unit());
      } while (yy + yy < xx * xx);
      const double v = R + xx;
      return negative ? -v : v;
    }
    // Wedge between the inner rectangle and the density.
    const double y = t.f[layer + 1] + s.next_unit() * (t.f[layer] - t.f[layer + 1]);
    if (y < std::exp(-0.5 * x * x)) return negative ? -x : x;
    // Rejected: restart the whole draw (fresh layer, sign, abscissa) so each
    // layer's accepted mass stays proportional to its area under the curve.
    const std::uint64_t w = s.next_u64();
    layer = static_cast<int>(w & 127);
    negative = (w & 128) != 0;
    const double uf = (static_cast<double>(w >> 11) + 0.5) * 0x1.0p-53;
    x = uf * t.x[layer];
    if (x < t.x[layer + 1]) return negative ? -x : x;
  }
}

}  // namespace crem::rng::detail
