#include "sbar/ztransform.hpp"

#include <cmath>
#include <numbers>

namespace sbar {

double ZInversionConfig::rho() const { return std::pow(10.0, -gamma / n); }

void ZInversionConfig::validate() const {
    if (n < 1) throw InvalidArgument("ztransform: n must be >= 1");
    if (!(gamma > 0.0 && gamma <= 12.0)) throw InvalidArgument("ztransform: gamma must lie in (0, 12]");
    if (n_E < 1 || m_E < 1) throw InvalidArgument("ztransform: n_E and m_E must be positive");
}

ContourPoints contour_points(const ZInversionConfig& cfg, bool accelerated) {
    cfg.validate();
    if (accelerated && cfg.n < 2) throw InvalidArgument("ztransform: Euler summation needs n >= 2");
    int J = accelerated ? cfg.n_E + cfg.m_E : cfg.n;
    double rho = cfg.rho();
    ContourPoints c;
    c.points.resize(static_cast<size_t>(J) + 1);
    for (int j = 0; j <= J; ++j) c.points[j] = std::polar(rho, std::numbers::pi * j / cfg.n);
    if (!accelerated) c.points[cfg.n] = cplx(-rho, 0.0);
    return c;
}

double invert_exact(std::span<const cplx> values, const ZInversionConfig& cfg) {
    cfg.validate();
    const int n = cfg.n;
    if (values.size() != static_cast<size_t>(n) + 1) throw InvalidArgument("invert_exact: need n+1 contour values");
    double s = values[0].real() + ((n % 2) ? -1.0 : 1.0) * values[n].real();
    for (int j = 1; j < n; ++j) s += 2.0 * ((j % 2) ? -1.0 : 1.0) * values[j].real();
    return s / (2.0 * n * std::pow(cfg.rho(), n));
}

namespace {

double euler_with(std::span<const cplx> values, int n, double rho, int nE, int mE) {
    // b_k = f(rho)/2 + sum_{j=1..k} (-1)^j Re f(q_j)
    double b = 0.5 * values[0].real();
    double acc = 0.0;
    double c = 1.0; // C(mE, j)
    for (int k = 1; k <= nE + mE; ++k) {
        b += ((k % 2) ? -1.0 : 1.0) * values[k].real();
        if (k >= nE) {
            int j = k - nE;
            acc += c * b;
            c = c * (mE - j) / (j + 1);
        }
    }
    return acc / (std::ldexp(1.0, mE) * n * std::pow(rho, n));
}

} // namespace

double invert_euler(std::span<const cplx> values, const ZInversionConfig& cfg) {
    cfg.validate();
    if (cfg.n < 2) throw InvalidArgument("invert_euler: needs n >= 2");
    if (values.size() != static_cast<size_t>(cfg.n_E + cfg.m_E) + 1)
        throw InvalidArgument("invert_euler: need n_E+m_E+1 contour values");
    return euler_with(values, cfg.n, cfg.rho(), cfg.n_E, cfg.m_E);
}

double invert(std::span<const cplx> values, const ZInversionConfig& cfg) {
    return cfg.use_euler() ? invert_euler(values, cfg) : invert_exact(values, cfg);
}

double euler_spread(std::span<const cplx> values, const ZInversionConfig& cfg) {
    if (!cfg.use_euler()) return 0.0;
    double base = invert_euler(values, cfg);
    double rho = cfg.rho();
    double s = 0.0;
    if (cfg.m_E > 1) s = std::max(s, std::abs(euler_with(values, cfg.n, rho, cfg.n_E, cfg.m_E - 1) - base));
    if (cfg.n_E > 1) s = std::max(s, std::abs(euler_with(values, cfg.n, rho, cfg.n_E - 1, cfg.m_E) - base));
    return s;
}

} // namespace sbar
