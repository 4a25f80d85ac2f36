#include "sbar/wiener_hopf.hpp"

#include <cmath>
#include <numbers>

namespace sbar {

namespace {

double wrap(double d) {
    const double two_pi = 2.0 * std::numbers::pi;
    return d - two_pi * std::round(d / two_pi);
}

// principal log, then an outward phase scan from xi = 0; any disagreement between the
// unwrapped and principal phase means Phi winds around the origin
void checked_log(const GridSpec& g, const cplx* phi, cplx* h) {
    const int M = g.M;
    for (int i = 0; i < M; ++i) {
        double a = std::abs(phi[i]);
        if (!(a >= 1e-14)) throw SingularInput("factorize: |Phi| below 1e-14 or not finite");
        h[i] = std::log(phi[i]);
    }
    const int c = g.half();
    for (int dir = -1; dir <= 1; dir += 2) {
        double unwrapped = h[c].imag();
        for (int i = c + dir; i >= 0 && i < M; i += dir) {
            unwrapped += wrap(h[i].imag() - h[i - dir].imag());
            if (std::abs(unwrapped - h[i].imag()) > 1e-9)
                throw BranchFailure("factorize: log Phi winds around the origin");
        }
    }
}

} // namespace

void factorize_raw(const HilbertKernel& kernel, const cplx* phi, cplx* plus, cplx* minus) {
    const GridSpec& g = kernel.grid();
    checked_log(g, phi, minus);
    plemelj_plus(kernel, minus, plus);
    for (int i = 0; i < g.M; ++i) {
        cplx hm = minus[i] - plus[i];
        plus[i] = std::exp(plus[i]);
        minus[i] = std::exp(hm);
    }
}

FactorPair factorize(const SampledSpectrum& phi, const HilbertKernel& kernel) {
    require_same_grid(phi.grid, kernel.grid(), "factorize");
    FactorPair r{SampledSpectrum(phi.grid), SampledSpectrum(phi.grid)};
    factorize_raw(kernel, phi.values.data(), r.plus.values.data(), r.minus.values.data());
    return r;
}

PlemeljPair decompose_additive(const SampledSpectrum& f, const HilbertKernel& kernel) {
    return plemelj_decompose(f, kernel);
}

} // namespace sbar
