#pragma once

#include "sbar/errors.hpp"

#include <vector>

namespace sbar {

// x_j = j dx, xi_k = k dxi for j,k = -M/2 .. M/2-1.
// Arrays are stored with storage index i = k + M/2, so element 0 is xi = -xi_max.
struct GridSpec {
    int M = 0;
    double x_max = 0.0;
    double dx = 0.0;
    double dxi = 0.0;
    double xi_max = 0.0;

    int half() const { return M / 2; }
    double x_at(int i) const { return (i - M / 2) * dx; }
    double xi_at(int i) const { return (i - M / 2) * dxi; }

    bool operator==(const GridSpec& o) const { return M == o.M && x_max == o.x_max; }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

GridSpec build_grid(int M, double x_max);

struct SampledSpectrum {
    GridSpec grid;
    std::vector<cplx> values;

    SampledSpectrum() = default;
    explicit SampledSpectrum(const GridSpec& g) : grid(g), values(static_cast<size_t>(g.M)) {}
    SampledSpectrum(const GridSpec& g, std::vector<cplx> v);
};

struct SampledDensity {
    GridSpec grid;
    std::vector<cplx> values;

    SampledDensity() = default;
    explicit SampledDensity(const GridSpec& g) : grid(g), values(static_cast<size_t>(g.M)) {}
    SampledDensity(const GridSpec& g, std::vector<cplx> v);
};

// dx * sum_j f(x_j) e^{i x_j xi_k}
SampledSpectrum forward_dft(const SampledDensity& density);
// (dxi / 2pi) * sum_k f(xi_k) e^{-i x_j xi_k}
SampledDensity inverse_dft(const SampledSpectrum& spectrum);
// (dxi / 2pi) * sum_k f(xi_k)
cplx inverse_at_zero(const SampledSpectrum& spectrum);
cplx inverse_at_zero(const GridSpec& grid, const cplx* values);

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* where);

} // namespace sbar
