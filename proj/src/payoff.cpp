#include "sbar/payoff.hpp"

#include <cstdint>
#include <cstdio>

namespace sbar {

double OptionContract::k() const { return std::log(K / S0); }

double OptionContract::l() const {
    if (!has_lower()) return -std::numeric_limits<double>::infinity();
    return std::log(L / S0);
}

double OptionContract::u(double x_max) const { return has_upper() ? std::log(U / S0) : x_max; }

void OptionContract::validate() const {
    auto bad = [](const char* m) { throw InvalidArgument(std::string("contract: ") + m); };
    if (!(S0 > 0.0) || !std::isfinite(S0)) bad("S0 must be positive");
    if (!(K > 0.0) || !std::isfinite(K)) bad("K must be positive");
    if (!(L >= 0.0)) bad("L must be >= 0");
    if (!(L < U)) bad("need L < U");
    if (!(T > 0.0) || !std::isfinite(T)) bad("T must be positive");
    if (N < 1) bad("N must be >= 1");
    if (!std::isfinite(r) || !std::isfinite(q_div) || !std::isfinite(alpha)) bad("rates and alpha must be finite");
}

std::string OptionContract::canonical() const {
    char buf[320];
    std::snprintf(buf, sizeof buf, "S0=%.17g;K=%.17g;U=%.17g;L=%.17g;r=%.17g;q=%.17g;T=%.17g;N=%d;type=%s;alpha=%.17g",
                  S0, K, U, L, r, q_div, T, N, type == OptionType::Call ? "call" : "put", alpha);
    return buf;
}

std::string OptionContract::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : canonical()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

bool payoff_support(const OptionContract& c, double x_max, double& a, double& b) {
    double k = c.k();
    double l = std::max(c.l(), -x_max);
    double u = std::min(c.u(x_max), x_max);
    if (c.type == OptionType::Call) {
        a = u;
        b = std::max(k, l);
        return b < a;
    }
    a = l;
    b = std::min(k, u);
    return a < b;
}

namespace {

// (e^w - 1) / w, exact limit 1 at w = 0
cplx expm1_over(cplx w) {
    if (std::abs(w) < 1e-3) {
        cplx s = 1.0, t = 1.0;
        for (int n = 2; n <= 8; ++n) {
            t *= w / static_cast<double>(n);
            s += t;
        }
        return s;
    }
    return (std::exp(w) - 1.0) / w;
}

// int_b^a e^{z x} dx
cplx exp_integral(cplx z, double a, double b) {
    double w = a - b;
    return std::exp(z * b) * w * expm1_over(z * w);
}

} // namespace

cplx damped_payoff_at(const OptionContract& c, double a, double b, cplx xi) {
    const cplx z = cplx(0.0, 1.0) * xi + c.alpha;
    return c.S0 * (exp_integral(1.0 + z, a, b) - std::exp(c.k()) * exp_integral(z, a, b));
}

SampledSpectrum damped_payoff_fourier(const OptionContract& c, const GridSpec& grid) {
    c.validate();
    SampledSpectrum out(grid);
    double a = 0.0, b = 0.0;
    if (!payoff_support(c, grid.x_max, a, b)) return out;
    for (int i = 0; i < grid.M; ++i) out.values[i] = damped_payoff_at(c, a, b, grid.xi_at(i));
    return out;
}

} // namespace sbar
