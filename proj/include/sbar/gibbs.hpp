#pragma once

#include "sbar/filters.hpp"

#include <vector>

namespace sbar {

// unit pulse on [-1/2, 1/2], f^(xi) = 2 sin(xi/2) / xi, recovered on the x_max = 2 lattice
constexpr double kGibbsXmax = 2.0;

struct GibbsPoint {
    double x = 0.0;
    double exact = 0.0;
    double recovered = 0.0;
    double filtered = 0.0;
};

struct GibbsSummary {
    int M = 0;
    double jump_value = 0.0;              // recovered value at x = 1/2 (a lattice point)
    double peak_error = 0.0;              // overshoot above 1 just inside the jump
    double interior_error = 0.0;          // sup error at distance >= 1/8 from the jumps
    double interior_error_filtered = 0.0;
    int crossings = 0;                    // sign changes of the error on [5/8, 15/8]
};

double pulse(double x);
double pulse_spectrum(double xi);

// lattice values through the inverse DFT
std::vector<GibbsPoint> gibbs_samples(int M, const FilterSpec& filter);

// off-lattice evaluation of the truncated series at x
double gibbs_series(int M, double x, const FilterSpec& filter);

GibbsSummary gibbs_summary(int M, const FilterSpec& filter);

} // namespace sbar
