#pragma once

#include "sbar/levy.hpp"
#include "sbar/payoff.hpp"

#include <cstdint>

namespace sbar {

struct OracleConfig {
    int quad_points = 1 << 15;
    long mc_paths = 1000000;
    std::uint64_t mc_seed = 20240601;
    double stderr_mult = 3.0;
    Exec exec = Exec::Parallel;

    void validate() const;
};

struct QuadResult {
    double price = 0.0;
    double grid_mass = 1.0; // density mass inside the un-aliased part of the weight grid
    bool mass_warning = false;
    double lo = 0.0, hi = 0.0; // node range in log-price
};

// Backward induction on nodes spanning [l, u] (tails cut where no barrier), with the value
// interpolated by hat functions and exact hat-kernel weights. Weights come from a dense Fourier
// transform of Psi (Kou, NIG, Gaussian) or from the gamma mixture of normals (VG).
QuadResult quad_price_detailed(const OptionContract& c, const LevyModel& m, const OracleConfig& cfg);
double quad_price(const OptionContract& c, const LevyModel& m, const OracleConfig& cfg);

struct McResult {
    double price = 0.0;
    double std_error = 0.0;
    long paths = 0;
};

// exact increments at the monitoring dates; deterministic for a given seed, any thread count
McResult mc_price(const OptionContract& c, const LevyModel& m, const OracleConfig& cfg);

} // namespace sbar
