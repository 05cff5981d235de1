#pragma once

// Deterministic random streams.
//
// All randomness flows from a 64-bit master seed through explicit derivations:
//
//   replicate_seed(master, r)   = fmix64(master + PHI * (r + 1))
//   gaussian_at(stream, index)  = one N(0,1) variate from the counter-mode
//                                 word fmix64(stream + PHI * (index + 1))
//
// where fmix64 is the splitmix64 output permutation and PHI its increment.
// Gaussian variates use the 128-layer Marsaglia-Tsang ziggurat; the rare
// wedge/tail path continues on a splitmix64 stream derived from the counter
// word, so two distinct (stream, index) pairs never share uniforms. The
// method is inverse-free and fixed: the same (seed, index) always yields the
// same variate, on any thread count.

#include <cmath>
#include <cstdint>

namespace crem::rng {

inline constexpr std::uint64_t kPhi = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t fmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// splitmix64 sequence.
struct Stream {
  std::uint64_t state;
  explicit Stream(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_u64() {
    state += kPhi;
    return fmix64(state);
  }
  /// Uniform in the open interval (0,1).
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }
};

inline std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t replicate) {
  return fmix64(master + kPhi * (replicate + 1));
}

/// Independent sub-stream b of stream a (used for walk branches, per-case
/// seeds, and similar).
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t label) {
  return fmix64(seed + kPhi * (label + 1));
}

namespace detail {

struct ZigguratTables {
  double x[130];  // layer boundaries, x[0] = V/f(R) pseudo-width, x[1] = R
  double f[130];  // exp(-x^2/2) at the boundaries

  ZigguratTables() {
    constexpr double R = 3.442619855899;
    constexpr double V = 9.91256303526217e-3;
    x[1] = R;
    f[1] = std::exp(-0.5 * R * R);
    x[0] = V / f[1];
    f[0] = 1.0;
    for (int i = 2; i <= 128; ++i) {
      f[i] = f[i - 1] + V / x[i - 1];
      x[i] = (f[i] >= 1.0) ? 0.0 : std::sqrt(-2.0 * std::log(f[i]));
    }
    x[128] = 0.0;
    f[128] = 1.0;
    x[129] = 0.0;
    f[129] = 1.0;
  }
};

// Eagerly initialized at program start; no per-call init guard on the hot path.
inline const ZigguratTables kZigTables{};

inline const ZigguratTables& zig() { return kZigTables; }

double gaussian_slow_path(std::uint64_t u, int layer, double candidate, bool negative);

}  // namespace detail

/// One standard Gaussian variate from a raw 64-bit word; rejection paths
/// (about 2% of draws) continue on a stream derived from the word itself.
inline double gaussian_from_u64(std::uint64_t u) {
  const auto& t = detail::zig();
  const int i = static_cast<int>(u & 127);
  const bool neg = (u & 128) != 0;
  const double uf = (static_cast<double>(u >> 11) + 0.5) * 0x1.0p-53;
  const double x = uf * t.x[i];
  if (x < t.x[i + 1]) return neg ? -x : x;
  return detail::gaussian_slow_path(u, i, x, neg);
}

/// Counter-mode Gaussian: variate `index` of stream `stream_seed`.
inline double gaussian_at(std::uint64_t stream_seed, std::uint64_t index) {
  return gaussian_from_u64(fmix64(stream_seed + kPhi * (index + 1)));
}

}  // namespace crem::rng
