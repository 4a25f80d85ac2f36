#include "sbar/config.hpp"

#include "sbar/grid_policy.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace sbar {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string lower(std::string s) {
    for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return s;
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> k = {
        "contract.S0", "contract.K", "contract.U", "contract.L", "contract.r", "contract.q", "contract.T",
        "contract.N", "contract.type", "contract.alpha",
        "model.kind",
        "kou.p", "kou.lambda", "kou.sigma", "kou.eta1", "kou.eta2",
        "nig.alpha", "nig.beta", "nig.delta",
        "vg.theta", "vg.sigma", "vg.nu",
        "gaussian.sigma",
        "method",
        "filter.kind", "filter.p", "filter.theta", "filter.eps", "filter.factorization",
        "grid.M", "grid.M_list", "grid.xmax",
        "zt.gamma", "zt.ne", "zt.me", "zt.accelerated",
        "fgm.tol", "fgm.max_iter",
        "run.exec",
        "oracle.quad_points", "oracle.mc_paths", "oracle.mc_seed", "oracle.stderr_mult", "oracle.mc",
        "converge.methods",
        "reference.M", "reference.cache", "reference.price",
        "gibbs.M_list",
        "dump.points",
        "output.path",
    };
    return k;
}

struct Entry {
    std::string value;
    int line;
};

class Table {
public:
    explicit Table(std::map<std::string, Entry> e) : e_(std::move(e)) {}

    bool has(const std::string& k) const { return e_.count(k) != 0; }
    const std::string& raw(const std::string& k) const { return e_.at(k).value; }

    double number(const std::string& k) const {
        const std::string& v = raw(k);
        double x = 0.0;
        std::string t = lower(v);
        if (t == "inf" || t == "+inf" || t == "infinity") return std::numeric_limits<double>::infinity();
        auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
        if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError(k, "not a number: '" + v + "'");
        return x;
    }

    long integer_value(const std::string& k, const std::string& v) const {
        auto caret = v.find('^');
        if (caret != std::string::npos) {
            long base = integer_value(k, trim(v.substr(0, caret)));
            long e = integer_value(k, trim(v.substr(caret + 1)));
            if (e < 0 || e > 40) throw ConfigError(k, "exponent out of range: '" + v + "'");
            long r = 1;
            for (long i = 0; i < e; ++i) r *= base;
            return r;
        }
        long x = 0;
        auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
        if (ec != std::errc() || p != v.data() + v.size() || v.empty())
            throw ConfigError(k, "not an integer: '" + v + "'");
        return x;
    }

    long integer(const std::string& k) const { return integer_value(k, raw(k)); }

    bool boolean(const std::string& k) const {
        std::string v = lower(raw(k));
        if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
        if (v == "false" || v == "0" || v == "no" || v == "off") return false;
        throw ConfigError(k, "not a boolean: '" + raw(k) + "'");
    }

    std::vector<std::string> list(const std::string& k) const {
        std::vector<std::string> out;
        std::stringstream ss(raw(k));
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (!item.empty()) out.push_back(item);
        }
        return out;
    }

    // "256, 512" or "2^8..2^12" (doubling)
    std::vector<int> sizes(const std::string& k) const {
        std::vector<int> out;
        for (const auto& item : list(k)) {
            auto dots = item.find("..");
            if (dots != std::string::npos) {
                long a = integer_value(k, trim(item.substr(0, dots)));
                long b = integer_value(k, trim(item.substr(dots + 2)));
                if (a < 1 || b < a) throw ConfigError(k, "bad range '" + item + "'");
                for (long m = a; m <= b; m *= 2) out.push_back(static_cast<int>(m));
            } else {
                out.push_back(static_cast<int>(integer_value(k, item)));
            }
        }
        return out;
    }

private:
    std::map<std::string, Entry> e_;
};

void check_size(const std::string& key, long M) {
    if (M < 16 || M > (1L << 24) || (M & (M - 1)) != 0)
        throw ConfigError(key, "grid size must be a power of two in [16, 2^24], got " + std::to_string(M));
}

template <class F>
void wrap(const std::string& key, F&& f) {
    try {
        f();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(key, e.what());
    }
}

} // namespace

std::optional<Method> parse_method(const std::string& s) {
    std::string t = lower(trim(s));
    if (t == "fgm") return Method::FGM;
    if (t == "fgm-f" || t == "fgmf") return Method::FGM_F;
    if (t == "fl") return Method::FL;
    if (t == "fl-f" || t == "flf") return Method::FL_F;
    return std::nullopt;
}

std::optional<FilterKind> parse_filter_kind(const std::string& s) {
    std::string t = lower(trim(s));
    if (t == "none" || t == "off") return FilterKind::None;
    if (t == "exp" || t == "exponential") return FilterKind::Exponential;
    if (t == "planck" || t == "planck-taper") return FilterKind::PlanckTaper;
    return std::nullopt;
}

LevyModel RunConfig::levy() const {
    const double r = contract.r, q = contract.q_div;
    switch (model.kind) {
    case ModelKind::Kou:
        return LevyModel::kou(model.kou, r, q);
    case ModelKind::NIG:
        return LevyModel::nig(model.nig, r, q);
    case ModelKind::VG:
        return LevyModel::vg(model.vg, r, q);
    case ModelKind::Gaussian:
        return LevyModel::gaussian(model.gaussian, r, q);
    }
    throw ConfigError("model.kind", "unset");
}

double RunConfig::resolved_xmax() const {
    if (x_max) return *x_max;
    return default_xmax(contract, levy());
}

RunConfig parse_config(const std::string& text, bool pricing) {
    std::map<std::string, Entry> entries;
    std::stringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno), "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno), "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!section.empty() && key.find('.') == std::string::npos) key = section + "." + key;
        if (!known_keys().count(key)) throw ConfigError(key, "unknown key (line " + std::to_string(lineno) + ")");
        if (value.empty()) throw ConfigError(key, "empty value");
        if (entries.count(key)) throw ConfigError(key, "duplicate key (line " + std::to_string(lineno) + ")");
        entries[key] = {value, lineno};
    }
    Table t(std::move(entries));
    RunConfig c;

    // contract
    if (pricing) {
        for (const char* k : {"contract.S0", "contract.K", "contract.L", "contract.r", "contract.T", "contract.N"})
            if (!t.has(k)) throw ConfigError(k, "missing required key");
        if (!t.has("model.kind")) throw ConfigError("model.kind", "missing required key");
    }
    auto num = [&](const char* k, double& dst) {
        if (t.has(k)) dst = t.number(k);
    };
    OptionContract& ct = c.contract;
    num("contract.S0", ct.S0);
    num("contract.K", ct.K);
    num("contract.U", ct.U);
    num("contract.L", ct.L);
    num("contract.r", ct.r);
    num("contract.q", ct.q_div);
    num("contract.T", ct.T);
    num("contract.alpha", ct.alpha);
    if (t.has("contract.N")) {
        long n = t.integer("contract.N");
        if (n < 1 || n > 100000) throw ConfigError("contract.N", "must be in [1, 100000]");
        ct.N = static_cast<int>(n);
    }
    if (t.has("contract.type")) {
        std::string v = lower(t.raw("contract.type"));
        if (v == "call") ct.type = OptionType::Call;
        else if (v == "put") ct.type = OptionType::Put;
        else throw ConfigError("contract.type", "expected call or put");
    }
    if (!(ct.S0 > 0.0) || !std::isfinite(ct.S0)) throw ConfigError("contract.S0", "must be positive");
    if (!(ct.K > 0.0) || !std::isfinite(ct.K)) throw ConfigError("contract.K", "must be positive");
    if (!(ct.L >= 0.0) || !std::isfinite(ct.L)) throw ConfigError("contract.L", "must be finite and >= 0 (0 = none)");
    if (!(ct.U > ct.L)) throw ConfigError("contract.U", "must exceed contract.L");
    if (!(ct.T > 0.0) || !std::isfinite(ct.T)) throw ConfigError("contract.T", "must be positive");
    wrap("contract", [&] { ct.validate(); });

    // model
    if (t.has("model.kind")) {
        std::string v = lower(t.raw("model.kind"));
        if (v == "kou") c.model.kind = ModelKind::Kou;
        else if (v == "nig") c.model.kind = ModelKind::NIG;
        else if (v == "vg") c.model.kind = ModelKind::VG;
        else if (v == "gaussian" || v == "bs") c.model.kind = ModelKind::Gaussian;
        else throw ConfigError("model.kind", "expected kou, nig, vg or gaussian");
    }
    const std::string prefix = model_name(c.model.kind);
    for (const char* p : {"kou.", "nig.", "vg.", "gaussian."}) {
        if (prefix + "." == p) continue;
        for (const auto& k : known_keys())
            if (k.rfind(p, 0) == 0 && t.has(k)) throw ConfigError(k, "does not apply to model.kind = " + prefix);
    }
    num("kou.p", c.model.kou.p);
    num("kou.lambda", c.model.kou.lambda);
    num("kou.sigma", c.model.kou.sigma);
    num("kou.eta1", c.model.kou.eta1);
    num("kou.eta2", c.model.kou.eta2);
    num("nig.alpha", c.model.nig.alpha);
    num("nig.beta", c.model.nig.beta);
    num("nig.delta", c.model.nig.delta);
    num("vg.theta", c.model.vg.theta);
    num("vg.sigma", c.model.vg.sigma);
    num("vg.nu", c.model.vg.nu);
    num("gaussian.sigma", c.model.gaussian.sigma);
    if (pricing) {
        std::optional<LevyModel> lm;
        wrap(prefix, [&] { lm = c.levy(); });
        if (!lm->strip().contains(ct.alpha))
            throw ConfigError("contract.alpha", "outside the strip where Psi(xi + i alpha) is finite");
    }

    // method and filter
    if (t.has("method")) {
        auto m = parse_method(t.raw("method"));
        if (!m) throw ConfigError("method", "expected fgm, fgm-f, fl or fl-f");
        c.method = *m;
    }
    if (t.has("filter.kind")) {
        auto k = parse_filter_kind(t.raw("filter.kind"));
        if (!k) throw ConfigError("filter.kind", "expected none, exp or planck");
        c.filter.kind = *k;
    }
    if (t.has("filter.p")) c.filter.p = static_cast<int>(t.integer("filter.p"));
    num("filter.theta", c.filter.theta);
    num("filter.eps", c.filter.eps);
    wrap("filter", [&] { c.filter.validate(); });
    if (t.has("filter.factorization")) {
        std::string v = lower(t.raw("filter.factorization"));
        if (v == "auto") c.factor_filter = FactorFilter::Auto;
        else if (v == "on" || v == "true") c.factor_filter = FactorFilter::On;
        else if (v == "off" || v == "false") c.factor_filter = FactorFilter::Off;
        else throw ConfigError("filter.factorization", "expected auto, on or off");
    }

    // grid
    if (t.has("grid.M")) {
        long M = t.integer("grid.M");
        check_size("grid.M", M);
        c.M = static_cast<int>(M);
    }
    if (t.has("grid.M_list")) {
        c.M_list = t.sizes("grid.M_list");
        for (int M : c.M_list) check_size("grid.M_list", M);
        for (size_t i = 1; i < c.M_list.size(); ++i)
            if (c.M_list[i] <= c.M_list[i - 1]) throw ConfigError("grid.M_list", "sizes must be strictly increasing");
    }
    if (t.has("grid.xmax")) {
        std::string v = lower(t.raw("grid.xmax"));
        if (v != "auto") {
            double x = t.number("grid.xmax");
            if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError("grid.xmax", "must be positive or 'auto'");
            c.x_max = x;
        }
    }

    // z-transform and fixed point
    num("zt.gamma", c.zcfg.gamma);
    if (t.has("zt.ne")) c.zcfg.n_E = static_cast<int>(t.integer("zt.ne"));
    if (t.has("zt.me")) c.zcfg.m_E = static_cast<int>(t.integer("zt.me"));
    if (t.has("zt.accelerated")) c.zcfg.accelerated = t.boolean("zt.accelerated");
    wrap("zt", [&] { c.zcfg.validate(); });
    num("fgm.tol", c.fgm.tol);
    if (!(c.fgm.tol > 0.0)) throw ConfigError("fgm.tol", "must be positive");
    if (t.has("fgm.max_iter")) {
        long n = t.integer("fgm.max_iter");
        if (n < 1 || n > 1000) throw ConfigError("fgm.max_iter", "must be in [1, 1000]");
        c.fgm.max_iter = static_cast<int>(n);
    }
    c.fgm.factor_filter = c.factor_filter;
    if (t.has("run.exec")) {
        std::string v = lower(t.raw("run.exec"));
        if (v == "serial") c.fgm.exec = Exec::Serial;
        else if (v == "parallel") c.fgm.exec = Exec::Parallel;
        else throw ConfigError("run.exec", "expected serial or parallel");
    }
    c.oracle.exec = c.fgm.exec;

    // oracle
    if (t.has("oracle.quad_points")) {
        long q = t.integer("oracle.quad_points");
        if (q < 4096 || q > (1L << 22)) throw ConfigError("oracle.quad_points", "must be in [4096, 2^22]");
        c.oracle.quad_points = static_cast<int>(q);
    }
    if (t.has("oracle.mc_paths")) c.oracle.mc_paths = t.integer("oracle.mc_paths");
    if (t.has("oracle.mc_seed")) {
        long s = t.integer("oracle.mc_seed");
        if (s < 0) throw ConfigError("oracle.mc_seed", "must be non-negative");
        c.oracle.mc_seed = static_cast<std::uint64_t>(s);
    }
    num("oracle.stderr_mult", c.oracle.stderr_mult);
    if (t.has("oracle.mc")) c.oracle_mc = t.boolean("oracle.mc");
    wrap("oracle", [&] { c.oracle.validate(); });

    // sweeps and references
    if (t.has("converge.methods")) {
        for (const auto& s : t.list("converge.methods")) {
            auto m = parse_method(s);
            if (!m) throw ConfigError("converge.methods", "unknown method '" + s + "'");
            c.converge_methods.push_back(*m);
        }
    }
    if (t.has("reference.M")) {
        long M = t.integer("reference.M");
        check_size("reference.M", M);
        c.reference_M = static_cast<int>(M);
    }
    if (t.has("reference.cache")) c.reference_cache = t.raw("reference.cache");
    if (t.has("reference.price")) {
        double p = t.number("reference.price");
        if (!std::isfinite(p)) throw ConfigError("reference.price", "must be finite");
        c.reference_price = p;
    }
    if (t.has("gibbs.M_list")) {
        c.gibbs_M_list = t.sizes("gibbs.M_list");
        for (int M : c.gibbs_M_list) check_size("gibbs.M_list", M);
        if (c.gibbs_M_list.empty()) throw ConfigError("gibbs.M_list", "empty list");
    }
    if (t.has("dump.points")) {
        long n = t.integer("dump.points");
        if (n < 2 || n > 1000000) throw ConfigError("dump.points", "must be in [2, 10^6]");
        c.dump_points = static_cast<int>(n);
    }
    if (t.has("output.path")) c.output_path = t.raw("output.path");
    return c;
}

RunConfig load_config(const std::string& path, bool pricing) {
    std::ifstream f(path);
    if (!f) throw ConfigError("--config", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), pricing);
}

void apply_overrides(RunConfig& cfg, const Overrides& o) {
    if (o.method) {
        auto m = parse_method(*o.method);
        if (!m) throw ConfigError("--method", "expected fgm, fgm-f, fl or fl-f");
        cfg.method = *m;
    }
    if (o.filter) {
        auto k = parse_filter_kind(*o.filter);
        if (!k) throw ConfigError("--filter", "expected none, exp or planck");
        cfg.filter.kind = *k;
    }
    if (o.M) {
        check_size("--M", *o.M);
        cfg.M = *o.M;
    }
    if (o.out) cfg.output_path = *o.out;
    if (o.seed) cfg.oracle.mc_seed = *o.seed;
}

} // namespace sbar
