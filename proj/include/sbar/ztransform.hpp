#pragma once

#include "sbar/errors.hpp"

#include <span>
#include <vector>

namespace sbar {

struct ZInversionConfig {
    double gamma = 6.0;
    int n = 1;
    int n_E = 12;
    int m_E = 20;
    bool accelerated = true;

    double rho() const;
    void validate() const;
    // Euler only when requested and n >= n_E + m_E; otherwise the exact sum
    bool use_euler() const { return accelerated && n >= n_E + m_E; }
};

struct ContourPoints {
    std::vector<cplx> points;
};

// q_j = rho e^{i pi j / n}, j = 0..n (exact) or j = 0..n_E+m_E (accelerated)
ContourPoints contour_points(const ZInversionConfig& cfg, bool accelerated);

double invert_exact(std::span<const cplx> values, const ZInversionConfig& cfg);
double invert_euler(std::span<const cplx> values, const ZInversionConfig& cfg);

// exact or Euler per cfg.use_euler(), with matching contour
inline ContourPoints contour_points(const ZInversionConfig& cfg) { return contour_points(cfg, cfg.use_euler()); }
double invert(std::span<const cplx> values, const ZInversionConfig& cfg);

// largest change of the Euler estimate when n_E or m_E is reduced by one; 0 for the exact sum
double euler_spread(std::span<const cplx> values, const ZInversionConfig& cfg);

} // namespace sbar
