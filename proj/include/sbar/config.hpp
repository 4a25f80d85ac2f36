#pragma once

#include "sbar/filters.hpp"
#include "sbar/levy.hpp"
#include "sbar/oracle.hpp"
#include "sbar/payoff.hpp"
#include "sbar/pricers.hpp"
#include "sbar/ztransform.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sbar {

// the message always starts with the offending key
struct ConfigError : std::runtime_error {
    std::string key;
    ConfigError(const std::string& k, const std::string& what) : std::runtime_error(k + ": " + what), key(k) {}
};

struct ModelSpec {
    ModelKind kind = ModelKind::Kou;
    KouParams kou{};
    NigParams nig{};
    VgParams vg{};
    GaussianParams gaussian{};
};

struct RunConfig {
    OptionContract contract;
    ModelSpec model;
    Method method = Method::FGM_F;
    FilterSpec filter = FilterSpec::exponential();
    FactorFilter factor_filter = FactorFilter::Auto;

    int M = 1024;
    std::vector<int> M_list;
    std::optional<double> x_max; // unset: default_xmax policy

    ZInversionConfig zcfg;
    FgmOptions fgm;

    OracleConfig oracle;
    bool oracle_mc = true;

    std::vector<Method> converge_methods;
    int reference_M = 1 << 16;
    std::string reference_cache;
    std::optional<double> reference_price;

    std::vector<int> gibbs_M_list = {64, 128, 256, 512, 1024};
    int dump_points = 201;
    std::string output_path;

    LevyModel levy() const;
    double resolved_xmax() const;
};

// pricing == false skips the contract and model requirements (gibbs-demo, filters-dump)
RunConfig parse_config(const std::string& text, bool pricing = true);
RunConfig load_config(const std::string& path, bool pricing = true);

struct Overrides {
    std::optional<std::string> method;
    std::optional<std::string> filter;
    std::optional<int> M;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
};

void apply_overrides(RunConfig& cfg, const Overrides& o);

// "fgm", "fgm-f", "fl", "fl-f" (case-insensitive)
std::optional<Method> parse_method(const std::string& s);
// "none", "exp", "exponential", "planck"
std::optional<FilterKind> parse_filter_kind(const std::string& s);

} // namespace sbar
