// Hot numeric kernels, compiled with -ffast-math so the compiler can use the
// vectorized libm. Callers guarantee finite inputs; anything involving
// infinities or empty ranges is handled before reaching these.

#include "crem/kernels.hpp"

#include <cmath>

namespace crem::kernels {

double sum_exp_scaled(const double* x, std::size_t n, double beta, double m) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::exp(beta * (x[i] - m));
  return s;
}

double max_value(const double* x, std::size_t n) {
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i) m = m > x[i] ? m : x[i];
  return m;
}

}  // namespace crem::kernels
