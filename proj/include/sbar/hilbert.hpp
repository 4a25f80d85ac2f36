#pragma once

#include "sbar/spectral_grid.hpp"

#include <memory>
#include <vector>

namespace sbar {

// Toeplitz kernel (1 - cos(pi m)) / (pi m) over lags -(M-1)..(M-1), held as the
// FFT of its zero-padded length-2M layout.
class HilbertKernel {
public:
    explicit HilbertKernel(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }
    const std::vector<cplx>& kernel_fft() const { return kfft_; }

    // 0 at even lags (lag 0 included), 2/(pi m) at odd lags
    static double lag_value(long m);

    // out = H[f] on the grid; f and out may alias
    void apply(const cplx* f, cplx* out) const;

private:
    GridSpec grid_;
    std::vector<cplx> kfft_;
};

// one kernel per grid, built on first use
std::shared_ptr<const HilbertKernel> kernel_for(const GridSpec& grid);

struct PlemeljPair {
    SampledSpectrum plus;
    SampledSpectrum minus;
};

enum class Side { Above, Below };

SampledSpectrum discrete_hilbert(const SampledSpectrum& f, const HilbertKernel& kernel);
PlemeljPair plemelj_decompose(const SampledSpectrum& f, const HilbertKernel& kernel);
SampledSpectrum plemelj_decompose_shifted(const SampledSpectrum& f, double b, Side side, const HilbertKernel& kernel);
SampledSpectrum window_between_barriers(const SampledSpectrum& f, double l, double u, const HilbertKernel& kernel);

// Raw-array forms used by the pricers. All arrays have length M; out may alias f.
// plus = (f + iH f)/2
void plemelj_plus(const HilbertKernel& kernel, const cplx* f, cplx* out);
// (f +/- e^{ib xi} iH[e^{-ib xi} f]) / 2
void plemelj_shifted(const HilbertKernel& kernel, const cplx* f, double b, Side side, cplx* out);
// (e^{il xi} iH[e^{-il xi} f] - e^{iu xi} iH[e^{-iu xi} f]) / 2
void window_raw(const HilbertKernel& kernel, const cplx* f, double l, double u, cplx* out);

// e^{i b xi_k} for every grid node
std::vector<cplx> phase_vector(const GridSpec& grid, double b);

} // namespace sbar
