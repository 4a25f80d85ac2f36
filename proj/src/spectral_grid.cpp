#include "sbar/spectral_grid.hpp"

#include "sbar/fft.hpp"

#include <cmath>
#include <numbers>

namespace sbar {

GridSpec build_grid(int M, double x_max) {
    if (M < 8 || (M & (M - 1)) != 0)
        throw InvalidArgument("grid: M must be a power of two and at least 8");
    if (!(x_max > 0.0) || !std::isfinite(x_max))
        throw InvalidArgument("grid: x_max must be positive and finite");
    GridSpec g;
    g.M = M;
    g.x_max = x_max;
    g.dx = 2.0 * x_max / M;
    g.dxi = std::numbers::pi / x_max;
    g.xi_max = std::numbers::pi / g.dx;
    return g;
}

SampledSpectrum::SampledSpectrum(const GridSpec& g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
    if (values.size() != static_cast<size_t>(g.M)) throw InvalidArgument("spectrum: length differs from grid M");
}

SampledDensity::SampledDensity(const GridSpec& g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
    if (values.size() != static_cast<size_t>(g.M)) throw InvalidArgument("density: length differs from grid M");
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* where) {
    if (a != b) throw InvalidArgument(std::string(where) + ": grid mismatch");
}

namespace {

// With storage indices j' = j + M/2, k' = k + M/2 and M divisible by 4,
// e^{2 pi i jk/M} = (-1)^{j'} (-1)^{k'} e^{2 pi i j'k'/M}.
void centered_transform(std::vector<cplx>& a, int sign, double scale) {
    int M = static_cast<int>(a.size());
    for (int i = 1; i < M; i += 2) a[i] = -a[i];
    fft::transform(a.data(), M, sign);
    for (int i = 0; i < M; ++i) a[i] *= (i & 1) ? -scale : scale;
}

} // namespace

SampledSpectrum forward_dft(const SampledDensity& density) {
    SampledSpectrum out(density.grid, density.values);
    centered_transform(out.values, +1, density.grid.dx);
    return out;
}

SampledDensity inverse_dft(const SampledSpectrum& spectrum) {
    SampledDensity out(spectrum.grid, spectrum.values);
    centered_transform(out.values, -1, spectrum.grid.dxi / (2.0 * std::numbers::pi));
    return out;
}

cplx inverse_at_zero(const GridSpec& grid, const cplx* values) {
    cplx s = 0.0;
    for (int i = 0; i < grid.M; ++i) s += values[i];
    return s * (grid.dxi / (2.0 * std::numbers::pi));
}

cplx inverse_at_zero(const SampledSpectrum& spectrum) {
    return inverse_at_zero(spectrum.grid, spectrum.values.data());
}

} // namespace sbar
