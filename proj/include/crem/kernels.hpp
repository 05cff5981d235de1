#pragma once

#include <cstddef>

namespace crem::kernels {

/// sum_i exp(beta * (x[i] - m)) over finite inputs; n >= 1.
double sum_exp_scaled(const double* x, std::size_t n, double beta, double m);

/// max over n >= 1 finite values.
double max_value(const double* x, std::size_t n);

}  // namespace crem::kernels
