#pragma once

#include "sbar/hilbert.hpp"

namespace sbar {

struct FactorPair {
    SampledSpectrum plus;
    SampledSpectrum minus;
};

// Phi = Phi_+ Phi_- through h = log Phi, h_+ = plus(h), h_- = h - h_+
FactorPair factorize(const SampledSpectrum& phi, const HilbertKernel& kernel);

// Spitzer-named alias of the Plemelj split
PlemeljPair decompose_additive(const SampledSpectrum& f, const HilbertKernel& kernel);

// raw form for the pricers; phi is read only
void factorize_raw(const HilbertKernel& kernel, const cplx* phi, cplx* plus, cplx* minus);

} // namespace sbar
