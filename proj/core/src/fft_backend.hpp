#pragma once

#include <complex>
#include <span>

namespace splab::detail {

// In-place unnormalized n-dimensional DFT over an N^n row-major array.
// sign = -1 computes sum_j e^{-2 pi i jk/N} v_j; sign = +1 the conjugate kernel.
void fft_inplace(std::span<std::complex<double>> data, int dimension, int points, int sign);

}  // namespace splab::detail
