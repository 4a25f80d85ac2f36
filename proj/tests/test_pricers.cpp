#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "sbar/grid_policy.hpp"
#include "sbar/pricers.hpp"

#include <cmath>

using namespace sbar;
using namespace sbar::testing;

namespace {

PricingResult run(Method me, const OptionContract& c, const LevyModel& m, int M, double x_max = 0.0,
                  FgmOptions opt = {}) {
    if (x_max <= 0.0) x_max = default_xmax(c, m);
    FilterSpec f = method_filtered(me) ? FilterSpec::exponential() : FilterSpec::none();
    return price_with(me, c, m, build_grid(M, x_max), f, ZInversionConfig{}, opt);
}

} // namespace

TEST_CASE("method names") {
    CHECK(std::string(method_name(Method::FGM_F)) == "FGM-F");
    CHECK(method_filtered(Method::FL_F));
    CHECK_FALSE(method_filtered(Method::FGM));
    CHECK(method_is_fgm(Method::FGM));
    CHECK_FALSE(method_is_fgm(Method::FL));
}

TEST_CASE("Kou double barrier, four dates") {
    auto c = double_barrier(4);
    auto r = run(Method::FGM_F, c, kou(), 1024);
    CHECK(std::abs(r.price - 0.00721968941) < 1e-11);
    CHECK(r.avg_iterations <= 3.0);
    CHECK(r.max_iter_hits == 0);
    CHECK(std::abs(r.imag_part) < 1e-12);
    // FL at a larger grid lands on the same value
    auto fl = run(Method::FL, c, kou(), 1 << 14);
    CHECK(std::abs(fl.price - 0.00721968941) < 1e-10);
}

TEST_CASE("NIG double barrier, 52 dates") {
    auto r = run(Method::FGM_F, double_barrier(52), nig(), 1024);
    // the table value to 1e-9; the default x_max leaves about 3e-10 at this grid
    CHECK(std::abs(r.price - 0.00359559460) < 1e-9);
    CHECK(r.avg_iterations <= 3.0);
}

TEST_CASE("filtering is harmless for exponential decay") {
    auto c = down_and_out(52);
    auto a = run(Method::FGM, c, kou(), 1024), b = run(Method::FGM_F, c, kou(), 1024);
    CHECK(std::abs(a.price - b.price) < 1e-8);
}

TEST_CASE("serial and parallel agree bit for bit") {
    auto c = double_barrier(52);
    auto m = kou();
    auto g = build_grid(1 << 14, default_xmax(c, m));
    auto s = price_fl(c, m, g, FilterSpec::none(), Exec::Serial);
    auto p = price_fl(c, m, g, FilterSpec::none(), Exec::Parallel);
    CHECK(s.price == p.price);

    FgmOptions so, po;
    so.exec = Exec::Serial;
    po.exec = Exec::Parallel;
    auto g2 = build_grid(1024, default_xmax(c, m));
    auto fs = price_fgm_double(c, m, g2, FilterSpec::exponential(), {}, 1e-8, 5, so);
    auto fp = price_fgm_double(c, m, g2, FilterSpec::exponential(), {}, 1e-8, 5, po);
    CHECK(fs.price == fp.price);
    CHECK(fs.avg_iterations == fp.avg_iterations);
}

TEST_CASE("removing a barrier cannot lower the price") {
    auto m = nig();
    const double xm = 3.0;
    auto dbl = run(Method::FL, double_barrier(52, 0.85, 1.15), m, 1 << 13, xm);
    auto sgl = run(Method::FL, down_and_out(52, 0.85), m, 1 << 13, xm);
    auto c = down_and_out(52, 0.85);
    c.L = 0.0;
    auto van = run(Method::FL, c, m, 1 << 13, xm);
    CHECK(dbl.price > 0.0);
    CHECK(dbl.price <= sgl.price);
    CHECK(sgl.price <= van.price);
}

TEST_CASE("one date without barriers is a European call") {
    OptionContract c;
    c.N = 1;
    c.L = 0.0;
    auto m = gauss();
    auto r = run(Method::FL, c, m, 1 << 12);
    const auto& gp = m.gaussian_params();
    double bs = bs_call(c.S0, c.K, c.r, m.dividend(), gp.sigma, c.T);
    CHECK(std::abs(r.price - bs) < 1e-7);
}

TEST_CASE("VG down-and-out over a full year of dates") {
    auto c = down_and_out(252);
    auto m = vg();
    double xm = default_xmax(c, m);
    auto ref = run(Method::FL_F, c, m, 1 << 16, xm);
    auto r = run(Method::FGM_F, c, m, 1 << 12, xm);
    CHECK(std::abs(r.price - ref.price) < 1e-5);
}

TEST_CASE("FGM-F and FL-F agree on a VG single barrier") {
    auto c = down_and_out(52);
    auto m = vg();
    double xm = default_xmax(c, m);
    auto a = run(Method::FGM_F, c, m, 1 << 12, xm), b = run(Method::FL_F, c, m, 1 << 12, xm);
    CHECK(std::abs(a.price - b.price) < 1e-7);
}

TEST_CASE("a barrier band below the strike is worthless") {
    auto c = double_barrier(52, 0.8, 1.05);
    CHECK(run(Method::FGM_F, c, kou(), 1024).price == 0.0);
    CHECK(run(Method::FL, c, kou(), 1024).price == 0.0);
}

TEST_CASE("a distant upper barrier barely moves the single-barrier price") {
    auto m = kou();
    auto s = down_and_out(52, 0.85);
    double xm = default_xmax(s, m);
    auto c = double_barrier(52, 0.85, std::exp(xm));
    auto a = run(Method::FGM_F, c, m, 4096, 2.0 * xm), b = run(Method::FGM_F, s, m, 4096, 2.0 * xm);
    CHECK(std::abs(a.price - b.price) < 1e-6);
}

TEST_CASE("input errors") {
    auto m = kou();
    auto g = build_grid(1024, 2.0);
    // FGM needs at least three dates
    CHECK_THROWS_AS(price_fgm_double(double_barrier(2), m, g, FilterSpec::none(), {}, 1e-8, 5), InvalidArgument);
    // single-barrier scheme takes U = inf only
    CHECK_THROWS_AS(price_fgm_single(double_barrier(52), m, g, FilterSpec::none(), {}), InvalidArgument);
    // damping outside the strip
    auto c = double_barrier(52);
    c.alpha = 50.0;
    CHECK_THROWS(price_fl(c, m, g, FilterSpec::none()));
}
