#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sbar/config.hpp"

#include <cmath>
#include <string>

using namespace sbar;

namespace {

const std::string kBase = R"(# Kou double barrier
contract.S0 = 1
contract.K = 1.1
contract.L = 0.8
contract.U = 1.2
contract.r = 0.05
contract.q = 0.02
contract.T = 1
contract.N = 52
model.kind = kou
)";

std::string key_of(const std::string& text, bool pricing = true) {
    try {
        parse_config(text, pricing);
    } catch (const ConfigError& e) {
        return e.key;
    }
    return "";
}

} // namespace

TEST_CASE("minimal file") {
    auto c = parse_config(kBase);
    CHECK(c.contract.N == 52);
    CHECK(c.contract.U == 1.2);
    CHECK(c.model.kind == ModelKind::Kou);
    CHECK(c.method == Method::FGM_F);
    CHECK(c.M == 1024);
    CHECK_FALSE(c.x_max.has_value());
    CHECK(c.resolved_xmax() > std::abs(std::log(0.8)));
    CHECK(c.levy().kind() == ModelKind::Kou);
}

TEST_CASE("sections, comments and sweep syntax") {
    auto c = parse_config(R"(
method = fl-f   # trailing comment
[contract]
S0 = 1
K = 1.1
L = 0.85
r = 0.05
q = 0.02
T = 1
N = 2^6
type = call
[model]
kind = vg
[vg]
nu = 0.3
[grid]
M = 2^11
M_list = 2^8..2^11, 8192
xmax = 2.5
)");
    CHECK(c.method == Method::FL_F);
    CHECK(c.contract.N == 64);
    CHECK(std::isinf(c.contract.U));
    CHECK(c.model.kind == ModelKind::VG);
    CHECK(c.model.vg.nu == 0.3);
    CHECK(c.M == 2048);
    CHECK(c.M_list == std::vector<int>{256, 512, 1024, 2048, 8192});
    REQUIRE(c.x_max.has_value());
    CHECK(*c.x_max == 2.5);
}

TEST_CASE("missing keys are named") {
    for (const char* k : {"contract.K", "contract.N", "contract.T", "model.kind"}) {
        std::string text;
        std::string line;
        std::string needle = std::string(k) + " =";
        for (size_t p = 0, q; p < kBase.size(); p = q + 1) {
            q = kBase.find('\n', p);
            line = kBase.substr(p, q - p);
            if (line.rfind(needle, 0) != 0) text += line + "\n";
        }
        try {
            parse_config(text);
            FAIL("accepted a file without " << k);
        } catch (const ConfigError& e) {
            CHECK(e.key == k);
            CHECK(std::string(e.what()).find(k) == 0);
        }
    }
}

TEST_CASE("bad input is rejected with the key") {
    CHECK(key_of(kBase + "kou.bogus = 1\n") == "kou.bogus");
    CHECK(key_of(kBase + "contract.N = 4\n") == "contract.N");   // duplicate
    CHECK(key_of(kBase + "grid.M = \n") == "grid.M");            // empty
    CHECK(key_of(kBase + "grid.M = 1000\n") == "grid.M");        // not a power of two
    CHECK(key_of(kBase + "grid.M = 2^30\n") == "grid.M");
    CHECK(key_of(kBase + "grid.M_list = 512, 256\n") == "grid.M_list");
    CHECK(key_of(kBase + "grid.xmax = -1\n") == "grid.xmax");
    CHECK(key_of(kBase + "fgm.tol = abc\n") == "fgm.tol");
    CHECK(key_of(kBase + "method = simpson\n") == "method");
    CHECK(key_of(kBase + "filter.kind = hann\n") == "filter.kind");
    CHECK(key_of(kBase + "run.exec = gpu\n") == "run.exec");
    CHECK(key_of(kBase + "zt.gamma = 20\n") == "zt");
    CHECK(key_of(kBase + "converge.methods = fl, rk4\n") == "converge.methods");
    // parameters of a model that is not selected
    CHECK(key_of(kBase + "nig.alpha = 15\n") == "nig.alpha");
    // damping outside the Kou strip
    CHECK(key_of(kBase + "contract.alpha = 50\n") == "contract.alpha");
    CHECK(key_of(kBase + "contract.alpha = 11.9\n") == "");
    CHECK(key_of("contract.S0 = 1\n[contract\n") == "line 2");
    CHECK(key_of("just words\n") == "line 1");
}

TEST_CASE("contract sanity") {
    CHECK(key_of(kBase + "contract.type = straddle\n") == "contract.type");
    std::string swapped = kBase;
    swapped.replace(swapped.find("contract.U = 1.2"), 16, "contract.U = 0.7");
    CHECK(key_of(swapped) == "contract.U");
}

TEST_CASE("non-pricing commands need no contract") {
    auto c = parse_config("gibbs.M_list = 64..512\ndump.points = 11\n", false);
    CHECK(c.gibbs_M_list == std::vector<int>{64, 128, 256, 512});
    CHECK(c.dump_points == 11);
    CHECK(key_of("dump.points = 1\n", false) == "dump.points");
    CHECK(key_of("", true) == "contract.S0");
}

TEST_CASE("command-line overrides") {
    auto c = parse_config(kBase + "oracle.mc_seed = 7\n");
    Overrides o;
    o.method = "FL";
    o.filter = "none";
    o.M = 4096;
    o.out = "x.csv";
    o.seed = 99;
    apply_overrides(c, o);
    CHECK(c.method == Method::FL);
    CHECK(c.filter.kind == FilterKind::None);
    CHECK(c.M == 4096);
    CHECK(c.output_path == "x.csv");
    CHECK(c.oracle.mc_seed == 99);

    Overrides bad;
    bad.M = 1000;
    CHECK_THROWS_AS(apply_overrides(c, bad), ConfigError);
    bad = {};
    bad.method = "euler";
    CHECK_THROWS_AS(apply_overrides(c, bad), ConfigError);
}

TEST_CASE("name parsers") {
    CHECK(parse_method("FGM-F") == Method::FGM_F);
    CHECK(parse_method(" fl ") == Method::FL);
    CHECK_FALSE(parse_method("fft").has_value());
    CHECK(parse_filter_kind("Planck") == FilterKind::PlanckTaper);
    CHECK(parse_filter_kind("exp") == FilterKind::Exponential);
    CHECK_FALSE(parse_filter_kind("lanczos").has_value());
}

TEST_CASE("unreadable file") {
    CHECK_THROWS_AS(load_config("/nonexistent/run.cfg"), ConfigError);
}
