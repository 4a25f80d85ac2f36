#pragma once

#include "sbar/hilbert.hpp"
#include "sbar/levy.hpp"
#include "sbar/payoff.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace sbar::testing {

// H[f](xi_j) = sum_k f(xi_k) (1 - cos(pi (j-k))) / (pi (j-k)), by the O(M^2) sum
inline std::vector<cplx> direct_hilbert(const std::vector<cplx>& f) {
    const long M = static_cast<long>(f.size());
    std::vector<cplx> out(f.size());
    for (long j = 0; j < M; ++j) {
        cplx s = 0.0;
        for (long k = 0; k < M; ++k) {
            long d = j - k;
            if (d == 0) continue;
            double w = (1.0 - std::cos(std::numbers::pi * static_cast<double>(d))) / (std::numbers::pi * static_cast<double>(d));
            s += f[k] * w;
        }
        out[j] = s;
    }
    return out;
}

inline std::vector<cplx> random_spectrum(int M, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<cplx> f(static_cast<size_t>(M));
    for (auto& v : f) v = cplx(n(gen), n(gen));
    return f;
}

inline double sup_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
    return s;
}

inline double sup_abs(const std::vector<cplx>& a) {
    double s = 0.0;
    for (const auto& v : a) s = std::max(s, std::abs(v));
    return s;
}

// the parameter table used throughout: r = 5%, q = 2%, T = 1, S0 = 1, K = 1.1
inline LevyModel kou() { return LevyModel::kou({}, 0.05, 0.02); }
inline LevyModel nig() { return LevyModel::nig({}, 0.05, 0.02); }
inline LevyModel vg() { return LevyModel::vg({}, 0.05, 0.02); }
inline LevyModel gauss() { return LevyModel::gaussian({}, 0.05, 0.02); }

inline OptionContract double_barrier(int N, double L = 0.8, double U = 1.2) {
    OptionContract c;
    c.L = L;
    c.U = U;
    c.N = N;
    return c;
}

inline OptionContract down_and_out(int N, double L = 0.85) {
    OptionContract c;
    c.L = L;
    c.N = N;
    return c;
}

inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Black-Scholes with continuous dividend yield
inline double bs_call(double S, double K, double r, double q, double sigma, double T) {
    double sd = sigma * std::sqrt(T);
    double d1 = (std::log(S / K) + (r - q + 0.5 * sigma * sigma) * T) / sd;
    return S * std::exp(-q * T) * norm_cdf(d1) - K * std::exp(-r * T) * norm_cdf(d1 - sd);
}

} // namespace sbar::testing
