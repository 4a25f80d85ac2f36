#include "sbar/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sbar {

double pulse(double x) {
    double a = std::abs(x);
    if (a < 0.5) return 1.0;
    if (a == 0.5) return 0.5;
    return 0.0;
}

double pulse_spectrum(double xi) {
    if (std::abs(xi) < 1e-8) return 1.0 - xi * xi / 24.0;
    return 2.0 * std::sin(0.5 * xi) / xi;
}

namespace {

std::vector<double> weighted_coeffs(const GridSpec& g, const FilterSpec& filter) {
    std::vector<double> a(static_cast<size_t>(g.M));
    std::vector<double> sig;
    if (filter.active()) sig = filter_samples(filter, g);
    for (int i = 0; i < g.M; ++i) {
        a[i] = pulse_spectrum(g.xi_at(i)) * g.dxi / (2.0 * std::numbers::pi);
        if (filter.active()) a[i] *= sig[i];
    }
    return a;
}

double series_at(const GridSpec& g, const std::vector<double>& a, double x) {
    // f^ is even, so sum a_k cos(xi_k x); powers of e^{i dxi x} by rotation
    const cplx w = std::polar(1.0, g.dxi * x);
    cplx z = std::polar(1.0, -g.xi_max * x);
    double s = 0.0;
    for (int i = 0; i < g.M; ++i) {
        s += a[i] * z.real();
        z *= w;
        if ((i & 255) == 255) z /= std::abs(z);
    }
    return s;
}

} // namespace

std::vector<GibbsPoint> gibbs_samples(int M, const FilterSpec& filter) {
    filter.validate();
    GridSpec g = build_grid(M, kGibbsXmax);
    SampledSpectrum s(g), sf(g);
    std::vector<double> sig;
    if (filter.active()) sig = filter_samples(filter, g);
    for (int i = 0; i < M; ++i) {
        s.values[i] = pulse_spectrum(g.xi_at(i));
        sf.values[i] = filter.active() ? s.values[i] * sig[i] : s.values[i];
    }
    auto d = inverse_dft(s);
    auto df = inverse_dft(sf);
    std::vector<GibbsPoint> out(static_cast<size_t>(M));
    for (int j = 0; j < M; ++j) {
        double x = g.x_at(j);
        out[j] = {x, pulse(x), d.values[j].real(), df.values[j].real()};
    }
    return out;
}

double gibbs_series(int M, double x, const FilterSpec& filter) {
    filter.validate();
    GridSpec g = build_grid(M, kGibbsXmax);
    return series_at(g, weighted_coeffs(g, filter), x);
}

GibbsSummary gibbs_summary(int M, const FilterSpec& filter) {
    if (M < 16 || M % 8 != 0) throw InvalidArgument("gibbs: M must be a power of two >= 16");
    GridSpec g = build_grid(M, kGibbsXmax);
    const auto a = weighted_coeffs(g, FilterSpec::none());
    const auto af = weighted_coeffs(g, filter.active() ? filter : FilterSpec::exponential());

    GibbsSummary r;
    r.M = M;
    auto samples = gibbs_samples(M, FilterSpec::none());
    r.jump_value = samples[static_cast<size_t>(M / 2 + M / 8)].recovered;

    // the overshoot sits about pi / xi_max inside the jump
    const double scale = std::numbers::pi / g.xi_max;
    for (int i = 0; i <= 300; ++i) {
        double x = 0.5 - (i / 100.0) * scale;
        r.peak_error = std::max(r.peak_error, series_at(g, a, x) - 1.0);
    }

    // fixed off-lattice probe set, fine enough to resolve the oscillation for M <= 2^12
    const int P = 16384;
    const double h = 2.0 * kGibbsXmax / P;
    double prev = 0.0;
    bool have_prev = false;
    for (int i = 0; i < P; ++i) {
        double x = -kGibbsXmax + (i + 0.37) * h;
        if (std::abs(std::abs(x) - 0.5) < 0.125) continue;
        double e = series_at(g, a, x) - pulse(x);
        r.interior_error = std::max(r.interior_error, std::abs(e));
        r.interior_error_filtered = std::max(r.interior_error_filtered, std::abs(series_at(g, af, x) - pulse(x)));
        if (x >= 0.625 && x <= 1.875) {
            if (have_prev && ((e > 0) != (prev > 0))) ++r.crossings;
            prev = e;
            have_prev = true;
        }
    }
    return r;
}

} // namespace sbar
