#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "sbar/wiener_hopf.hpp"

#include <cmath>
#include <numbers>

using namespace sbar;
using namespace sbar::testing;

namespace {

SampledSpectrum one_minus_q_psi(const GridSpec& g, const LevyModel& m, cplx q, double dt) {
    SampledSpectrum s(g);
    for (int i = 0; i < g.M; ++i) s.values[i] = 1.0 - q * char_function(m, g.xi_at(i), dt);
    return s;
}

} // namespace

TEST_CASE("trivial symbol") {
    auto g = build_grid(256, 1.0);
    SampledSpectrum one(g, std::vector<cplx>(256, 1.0));
    auto f = factorize(one, *kernel_for(g));
    for (int i = 0; i < 256; ++i) {
        CHECK(std::abs(f.plus.values[i] - 1.0) < 1e-15);
        CHECK(std::abs(f.minus.values[i] - 1.0) < 1e-15);
    }
}

TEST_CASE("Phi+ Phi- = Phi for every model") {
    auto g = build_grid(1 << 12, 2.0);
    const auto& k = *kernel_for(g);
    const double rho = std::pow(10.0, -6.0 / 50);
    for (const auto& m : {kou(), nig(), vg(), gauss()}) {
        for (int j = 0; j < 5; ++j) {
            cplx q = std::polar(rho, std::numbers::pi * j / 5.0);
            auto phi = one_minus_q_psi(g, m, q, 1.0 / 52);
            auto f = factorize(phi, k);
            double err = 0.0;
            for (int i = 0; i < g.M; ++i)
                err = std::max(err, std::abs(f.plus.values[i] * f.minus.values[i] - phi.values[i]) /
                                        std::abs(phi.values[i]));
            CHECK(err < 1e-12);
        }
    }
}

TEST_CASE("factors of a known rational symbol") {
    // Phi+ = (a1 - i xi)/(a2 - i xi) is analytic and zero-free above the real line,
    // Phi- = (b1 + i xi)/(b2 + i xi) below; both tend to 1, so log Phi splits uniquely
    const double a1 = 2.0, a2 = 5.0, b1 = 3.0, b2 = 1.5;
    const cplx I(0.0, 1.0);
    auto plus = [&](double xi) { return (a1 - I * xi) / (a2 - I * xi); };
    auto minus = [&](double xi) { return (b1 + I * xi) / (b2 + I * xi); };
    // log Phi decays only like 1/xi, so the split converges algebraically in M
    auto errors = [&](int M) {
        auto g = build_grid(M, 30.0);
        SampledSpectrum phi(g);
        for (int i = 0; i < g.M; ++i) phi.values[i] = plus(g.xi_at(i)) * minus(g.xi_at(i));
        auto f = factorize(phi, *kernel_for(g));
        double e = 0.0;
        for (int i = 0; i < g.M; ++i) {
            double xi = g.xi_at(i);
            if (std::abs(xi) > 5.0) continue;
            e = std::max(e, std::abs(f.plus.values[i] - plus(xi)));
            e = std::max(e, std::abs(f.minus.values[i] - minus(xi)));
        }
        return e;
    };
    double e12 = errors(1 << 12), e14 = errors(1 << 14);
    CHECK(e14 < 5e-3);
    CHECK(e14 < 0.5 * e12);
}

TEST_CASE("additive decomposition is the Plemelj split") {
    auto g = build_grid(256, 2.0);
    SampledSpectrum f(g, random_spectrum(256, 11));
    auto a = decompose_additive(f, *kernel_for(g));
    auto b = plemelj_decompose(f, *kernel_for(g));
    CHECK(sup_diff(a.plus.values, b.plus.values) == 0.0);
    CHECK(sup_diff(a.minus.values, b.minus.values) == 0.0);
}

TEST_CASE("zero of Phi is a singular input") {
    auto g = build_grid(64, 1.0);
    SampledSpectrum phi(g, std::vector<cplx>(64, 1.0));
    phi.values[10] = 0.0;
    CHECK_THROWS_AS(factorize(phi, *kernel_for(g)), SingularInput);
    phi.values[10] = std::nan("");
    CHECK_THROWS_AS(factorize(phi, *kernel_for(g)), SingularInput);
}

TEST_CASE("a winding symbol is a branch failure") {
    auto g = build_grid(256, 1.0);
    SampledSpectrum phi(g);
    // e^{i xi x0} winds many times across the band
    for (int i = 0; i < g.M; ++i) phi.values[i] = std::polar(1.0, 0.5 * g.xi_at(i));
    CHECK_THROWS_AS(factorize(phi, *kernel_for(g)), BranchFailure);
}
