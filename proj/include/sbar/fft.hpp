#pragma once

#include "sbar/errors.hpp"

namespace sbar::fft {

// In-place complex FFT of length n backed by FFTW.
// sign = -1: out_k = sum_j in_j e^{-2 pi i jk/n}; sign = +1 flips the exponent. Unnormalized.
// Plans are created once per (n, sign) under a lock; execution is reentrant.
void transform(cplx* data, int n, int sign);

} // namespace sbar::fft
