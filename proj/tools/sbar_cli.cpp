#include "sbar/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace sbar;

int main(int argc, char** argv) {
    CLI::App app{"discretely monitored barrier options under Levy processes"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides ov;
    std::string method, filter, out;
    int M = 0;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* sub, bool need_config) {
        auto* c = sub->add_option("--config", config_path, "key = value config file");
        if (need_config) c->required();
        sub->add_option("--method", method, "fgm | fgm-f | fl | fl-f");
        sub->add_option("--filter", filter, "none | exp | planck");
        sub->add_option("--M", M, "grid size (power of two)");
        sub->add_option("--out", out, "CSV output path");
        sub->add_option("--seed", seed, "Monte Carlo seed");
    };
    auto* price = app.add_subcommand("price", "price one contract");
    auto* converge = app.add_subcommand("converge", "error against grid size for a sweep of M");
    auto* gibbs = app.add_subcommand("gibbs-demo", "pulse recovery and filter demo");
    auto* oracle = app.add_subcommand("oracle", "quadrature and Monte Carlo cross-check");
    auto* dump = app.add_subcommand("filters-dump", "tabulate the spectral filters on [-1, 1]");
    add_common(price, true);
    add_common(converge, true);
    add_common(gibbs, false);
    add_common(oracle, true);
    add_common(dump, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    auto given = [&](const char* name) { return sub->count(name) > 0; };
    if (given("--method")) ov.method = method;
    if (given("--filter")) ov.filter = filter;
    if (given("--M")) ov.M = M;
    if (given("--out")) ov.out = out;
    if (given("--seed")) ov.seed = seed;

    try {
        const bool pricing = sub == price || sub == converge || sub == oracle;
        RunConfig cfg = config_path.empty() ? parse_config("", false) : load_config(config_path, pricing);
        apply_overrides(cfg, ov);
        if (sub == price) return cmd_price(cfg, std::cout);
        if (sub == converge) return cmd_converge(cfg, std::cout);
        if (sub == gibbs) return cmd_gibbs_demo(cfg, std::cout);
        if (sub == oracle) return cmd_oracle(cfg, std::cout);
        return cmd_filters_dump(cfg, std::cout);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const InvalidArgument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
