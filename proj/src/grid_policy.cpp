#include "sbar/grid_policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace sbar {

void tail_rates(const LevyModel& m, double& right, double& left) {
    Strip s = m.strip();
    if (m.kind() == ModelKind::Gaussian) {
        right = left = std::numeric_limits<double>::infinity();
        return;
    }
    // E e^{cX} < inf iff -c lies in the strip
    right = -s.lo;
    left = s.hi;
}

double default_xmax(const OptionContract& c, const LevyModel& m, int M_ref) {
    c.validate();
    const double tail = std::log(1e8);
    double B = std::abs(c.k());
    if (c.has_lower()) B = std::max(B, std::abs(c.l()));
    if (c.has_upper()) B = std::max(B, std::abs(std::log(c.U / c.S0)));

    if (m.kind() == ModelKind::Gaussian) {
        double sd = m.gaussian_params().sigma * std::sqrt(c.T);
        return B + sd * std::sqrt(2.0 * tail) + (c.has_upper() ? 0.0 : sd * sd);
    }

    double right = 0.0, left = 0.0;
    tail_rates(m, right, left);
    // an untruncated call payoff grows like e^x, eating one unit of the right tail
    if (!c.has_upper() && c.type == OptionType::Call) right -= 1.0;
    double a = std::min(right, left);
    double x_dom = B + tail / a;
    if (!c.has_upper() && c.type == OptionType::Call) {
        // the cut call payoff loses E[e^X; X > x] <= E[e^{cX}] e^{-(c-1)x}, horizon T, for 1 < c < right + 1
        double best = std::numeric_limits<double>::infinity();
        const double cap = right + 1.0;
        for (int i = 1; i < 200; ++i) {
            double cc = 1.0 + (cap - 1.0) * i / 200.0;
            double lm = m.exponent_unchecked(cplx(0.0, -cc)).real() * c.T - std::log(c.S0);
            best = std::min(best, (lm + tail) / (cc - 1.0) + std::log(c.S0));
        }
        x_dom = std::max(x_dom, best);
    }
    if (decay_class(m, c.dt()).cls == Decay::Polynomial) return x_dom;

    // tail(x) = -a (x - B), cut(x) = Re psi(pi M_ref / (2x)) dt; tail - cut is decreasing in x
    const double dt = c.dt();
    auto gap = [&](double x) {
        double xi = std::numbers::pi * M_ref / (2.0 * x);
        return -a * (x - B) - m.exponent_unchecked(cplx(xi, 0.0)).real() * dt;
    };
    if (gap(x_dom) >= 0.0) return x_dom;
    double lo = B, hi = x_dom;
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        double mid = 0.5 * (lo + hi);
        (gap(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace sbar
