#pragma once

#include "sbar/filters.hpp"
#include "sbar/levy.hpp"
#include "sbar/payoff.hpp"
#include "sbar/spectral_grid.hpp"
#include "sbar/ztransform.hpp"

#include <string>

namespace sbar {

enum class Method { FGM, FGM_F, FL, FL_F };

const char* method_name(Method m);
bool method_filtered(Method m);
bool method_is_fgm(Method m);

// whether 1 - q Psi is built with the filter too; Auto filters it for polynomially decaying Psi only
enum class FactorFilter { Auto, On, Off };

struct FgmOptions {
    double tol = 1e-8;
    int max_iter = 5;
    FactorFilter factor_filter = FactorFilter::Auto;
    Exec exec = Exec::Parallel;
};

struct PricingResult {
    double price = 0.0;
    int grid_M = 0;
    double x_max = 0.0;
    double cpu_seconds = 0.0;
    double avg_iterations = 0.0;   // double-barrier FGM only
    int max_iter_hits = 0;         // contour points that stopped on max_iter
    int contour_points = 0;
    double inversion_spread = 0.0; // Euler stability estimate
    double imag_part = 0.0;        // imaginary residue of the final sum
    Method method = Method::FL;
    FilterSpec filter;
};

// down-and-out, U = +inf (payoff cut at x_max), N >= 3
PricingResult price_fgm_single(const OptionContract& c, const LevyModel& m, const GridSpec& grid,
                               const FilterSpec& filter, const ZInversionConfig& zcfg,
                               const FgmOptions& opt = {});

// finite L < U, N >= 3; tol and max_iter control the per-point fixed-point loop
PricingResult price_fgm_double(const OptionContract& c, const LevyModel& m, const GridSpec& grid,
                               const FilterSpec& filter, const ZInversionConfig& zcfg, double tol, int max_iter,
                               const FgmOptions& opt = {});

// backward recursion over N-1 monitoring dates
PricingResult price_fl(const OptionContract& c, const LevyModel& m, const GridSpec& grid, const FilterSpec& filter,
                       Exec exec = Exec::Parallel);

// method dispatch; FGM picks single or double from contract.U
PricingResult price_with(Method method, const OptionContract& c, const LevyModel& m, const GridSpec& grid,
                         const FilterSpec& filter, const ZInversionConfig& zcfg, const FgmOptions& opt = {});

} // namespace sbar
