#pragma once

#include "sbar/levy.hpp"
#include "sbar/payoff.hpp"

namespace sbar {

// Log-price half-range for a contract/model pair, independent of the pricing M.
//   x_dom: largest barrier/strike log plus the distance over which the density tail
//          (or the damped payoff tail for U = +inf) falls by 1e-8;
//   x_bal: for exponentially decaying Psi, where that tail equals |Psi(xi_max, dt)| at M_ref,
//          so the band is not wasted on tails already below the frequency cut.
// Returns min(x_dom, x_bal).
double default_xmax(const OptionContract& c, const LevyModel& m, int M_ref = 1024);

// decay rates of the transition density: p(x) ~ e^{-right x} as x -> +inf, e^{-left |x|} as x -> -inf
// (infinite for the Gaussian)
void tail_rates(const LevyModel& m, double& right, double& left);

} // namespace sbar
