#pragma once

#include "sbar/spectral_grid.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace sbar {

enum class OptionType { Call = 1, Put = -1 };

struct OptionContract {
    double S0 = 1.0;
    double K = 1.1;
    double U = std::numeric_limits<double>::infinity();
    double L = 0.85;
    double r = 0.05;
    double q_div = 0.02;
    double T = 1.0;
    int N = 52;
    OptionType type = OptionType::Call;
    double alpha = 0.0;

    double k() const;
    // -inf when L = 0 (no lower barrier)
    double l() const;
    // log(U/S0), or x_max when U = +inf
    double u(double x_max) const;
    double dt() const { return T / N; }
    bool has_upper() const { return std::isfinite(U); }
    bool has_lower() const { return L > 0.0; }

    void validate() const;
    // canonical text of every field, and its 64-bit FNV-1a hash in hex
    std::string canonical() const;
    std::string hash() const;
};

// Fourier transform of the damped payoff, conjugation left to the caller.
// Call: a = u, b = max(k, l); put: a = l, b = min(k, u). A lower barrier at or below -x_max
// (or none at all) is cut at the grid edge.
SampledSpectrum damped_payoff_fourier(const OptionContract& c, const GridSpec& grid);

// same transform at one frequency, for the single-point checks and the oracle
cplx damped_payoff_at(const OptionContract& c, double a, double b, cplx xi);

// the (a, b) pair above; false when the support is empty
bool payoff_support(const OptionContract& c, double x_max, double& a, double& b);

} // namespace sbar
