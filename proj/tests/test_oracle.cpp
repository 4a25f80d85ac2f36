#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "sbar/grid_policy.hpp"
#include "sbar/oracle.hpp"
#include "sbar/pricers.hpp"

#include <cmath>

using namespace sbar;
using namespace sbar::testing;

namespace {

OracleConfig small_mc(long paths = 100000) {
    OracleConfig o;
    o.mc_paths = paths;
    return o;
}

} // namespace

TEST_CASE("quadrature prices a European call") {
    OptionContract c;
    c.N = 1;
    c.L = 0.0;
    auto m = gauss();
    double bs = bs_call(c.S0, c.K, c.r, m.dividend(), m.gaussian_params().sigma, c.T);
    CHECK(std::abs(quad_price(c, m, {}) - bs) < 1e-8);
    // several dates without barriers compound to the same thing
    c.N = 12;
    CHECK(std::abs(quad_price(c, m, {}) - bs) < 1e-7);
}

TEST_CASE("quadrature on the Kou table case") {
    auto r = quad_price_detailed(double_barrier(4), kou(), {});
    CHECK(std::abs(r.price - 0.00721968941) < 5e-7);
    CHECK_FALSE(r.mass_warning);
    CHECK(r.lo == doctest::Approx(std::log(0.8)));
    CHECK(r.hi == doctest::Approx(std::log(1.2)));
}

TEST_CASE("a remote barrier gives the vanilla price") {
    auto m = nig();
    OptionContract v;
    v.N = 12;
    v.L = 0.0;
    double vanilla = quad_price(v, m, {});
    auto c = down_and_out(12, 0.85);
    // with l right at -x_max the cut call payoff leaks across the periodic seam, so stay clear of it
    c.L = 0.05;
    double xm = default_xmax(c, m);
    auto r = price_with(Method::FGM_F, c, m, build_grid(4096, xm), FilterSpec::exponential(), {});
    CHECK(std::abs(r.price - vanilla) < 1e-6);
}

TEST_CASE("quadrature against FL, all three models") {
    for (const auto& m : {kou(), nig(), vg()}) {
        auto c = double_barrier(4, 0.85, 1.15);
        double q = quad_price(c, m, {});
        auto f = price_fl(c, m, build_grid(1 << 14, default_xmax(c, m)), FilterSpec::exponential());
        CHECK(std::abs(q - f.price) < 5e-7);
    }
}

TEST_CASE("Monte Carlo brackets the transform price") {
    for (const auto& m : {kou(), nig(), vg()}) {
        auto c = double_barrier(4, 0.85, 1.15);
        auto mc = mc_price(c, m, small_mc());
        auto f = price_fl(c, m, build_grid(1 << 13, default_xmax(c, m)), FilterSpec::exponential());
        CHECK(mc.paths == 100000);
        CHECK(mc.std_error > 0.0);
        CHECK(std::abs(mc.price - f.price) < 4.0 * mc.std_error);
    }
}

TEST_CASE("Monte Carlo is reproducible") {
    auto c = down_and_out(12);
    auto o = small_mc(20000);
    auto a = mc_price(c, kou(), o), b = mc_price(c, kou(), o);
    CHECK(a.price == b.price);
    o.exec = Exec::Serial;
    auto s = mc_price(c, kou(), o);
    CHECK(s.price == a.price);
    CHECK(s.std_error == a.std_error);
    o.mc_seed += 1;
    CHECK(mc_price(c, kou(), o).price != a.price);
}

TEST_CASE("validation") {
    OracleConfig o;
    o.quad_points = 100;
    CHECK_THROWS_AS(o.validate(), InvalidArgument);
    o = {};
    o.mc_paths = 10;
    CHECK_THROWS_AS(mc_price(down_and_out(4), kou(), o), InvalidArgument);
    o = {};
    o.stderr_mult = 0.0;
    CHECK_THROWS_AS(o.validate(), InvalidArgument);
}
