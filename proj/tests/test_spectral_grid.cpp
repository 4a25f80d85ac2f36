#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "sbar/spectral_grid.hpp"

#include <cmath>
#include <numbers>

using namespace sbar;
using namespace sbar::testing;

TEST_CASE("grid spacings") {
    auto g = build_grid(1024, 2.0);
    CHECK(g.dx == doctest::Approx(4.0 / 1024));
    CHECK(g.dxi == doctest::Approx(std::numbers::pi / 2.0));
    CHECK(g.xi_max == doctest::Approx(512 * std::numbers::pi / 2.0));
    CHECK(g.x_at(0) == doctest::Approx(-2.0));
    CHECK(g.x_at(512) == 0.0);
    CHECK(g.xi_at(512) == 0.0);
    CHECK(g.dx * g.dxi == doctest::Approx(2.0 * std::numbers::pi / 1024));
}

TEST_CASE("invalid grids") {
    CHECK_THROWS_AS(build_grid(1000, 1.0), InvalidArgument);
    CHECK_THROWS_AS(build_grid(4, 1.0), InvalidArgument);
    CHECK_THROWS_AS(build_grid(64, 0.0), InvalidArgument);
    CHECK_THROWS_AS(build_grid(64, -1.0), InvalidArgument);
}

TEST_CASE("forward then inverse is the identity") {
    for (int M : {8, 64, 4096}) {
        auto g = build_grid(M, 3.0);
        SampledDensity d(g, random_spectrum(M, 7u + M));
        auto back = inverse_dft(forward_dft(d));
        CHECK(sup_diff(back.values, d.values) < 1e-13 * std::sqrt(M));
    }
}

TEST_CASE("DFT of a Gaussian density") {
    auto g = build_grid(1024, 12.0);
    SampledDensity d(g);
    for (int j = 0; j < g.M; ++j) {
        double x = g.x_at(j);
        d.values[j] = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    }
    auto s = forward_dft(d);
    double err = 0.0;
    for (int k = 0; k < g.M; ++k) {
        double xi = g.xi_at(k);
        err = std::max(err, std::abs(s.values[k] - std::exp(-0.5 * xi * xi)));
    }
    CHECK(err < 1e-13);
}

TEST_CASE("DFT sign convention: a shifted spike picks up e^{+i x xi}") {
    auto g = build_grid(64, 1.0);
    SampledDensity d(g);
    d.values[32 + 5] = 1.0 / g.dx;
    auto s = forward_dft(d);
    for (int k = 0; k < g.M; ++k) CHECK(std::abs(s.values[k] - std::polar(1.0, g.x_at(37) * g.xi_at(k))) < 1e-12);
}

TEST_CASE("inverse at zero is the middle sample of the inverse") {
    auto g = build_grid(256, 2.0);
    SampledSpectrum s(g, random_spectrum(256, 3));
    auto d = inverse_dft(s);
    CHECK(std::abs(inverse_at_zero(s) - d.values[128]) < 1e-14);
    CHECK(std::abs(inverse_at_zero(g, s.values.data()) - d.values[128]) < 1e-14);
}

TEST_CASE("grid mismatch and length errors") {
    auto a = build_grid(64, 1.0), b = build_grid(64, 2.0);
    CHECK_THROWS_AS(require_same_grid(a, b, "t"), InvalidArgument);
    CHECK_NOTHROW(require_same_grid(a, a, "t"));
    CHECK_THROWS_AS(SampledSpectrum(a, std::vector<cplx>(10)), InvalidArgument);
}
