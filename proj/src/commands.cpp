#include "sbar/commands.hpp"

#include "sbar/gibbs.hpp"
#include "sbar/grid_policy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace sbar {

std::string fmt_num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", x);
    return buf;
}

namespace {

// filter descriptors carry commas; keep CSV columns plain
std::string csv_safe(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    return s;
}

std::string stem(const std::string& path) {
    auto slash = path.find_last_of('/');
    auto dot = path.find_last_of('.');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) return path.substr(0, dot);
    return path;
}

// CSV to output.path, or to the log stream when none is set
class CsvSink {
public:
    CsvSink(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigError("output.path", "cannot write '" + path + "'");
        }
    }
    std::ostream& out() { return path_.empty() ? fallback_ : file_; }

private:
    std::string path_;
    std::ostream& fallback_;
    std::ofstream file_;
};

std::string filter_used(Method m, const FilterSpec& f) {
    if (!method_filtered(m)) return "none";
    return csv_safe((f.active() ? f : FilterSpec::exponential()).describe());
}

void check_filter(const RunConfig& cfg, Method m) {
    if (method_filtered(m) && !cfg.filter.active())
        throw ConfigError("filter.kind", std::string(method_name(m)) + " needs a filter, got none");
}

} // namespace

ReferenceCache ReferenceCache::load(const std::string& path) {
    ReferenceCache c;
    std::ifstream f(path);
    if (!f) return c;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, '\t')) cols.push_back(item);
        if (cols.size() != 7) throw ConfigError("reference.cache", "malformed line " + std::to_string(lineno));
        if (cols[0] == "model") continue;
        ReferenceEntry e;
        try {
            e.model = cols[0];
            e.contract_hash = cols[1];
            e.N = std::stoi(cols[2]);
            e.M = std::stoi(cols[3]);
            e.x_max = std::stod(cols[4]);
            e.price = std::stod(cols[5]);
            e.source = cols[6];
        } catch (const std::exception&) {
            throw ConfigError("reference.cache", "malformed line " + std::to_string(lineno));
        }
        c.rows_.push_back(e);
    }
    return c;
}

void ReferenceCache::save(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw ConfigError("reference.cache", "cannot write '" + path + "'");
    f << "model\tcontract_hash\tN\tM\tx_max\tprice\tsource\n";
    char buf[64];
    for (const auto& e : rows_) {
        f << e.model << '\t' << e.contract_hash << '\t' << e.N << '\t' << e.M << '\t';
        std::snprintf(buf, sizeof buf, "%.17g", e.x_max);
        f << buf << '\t';
        std::snprintf(buf, sizeof buf, "%.17g", e.price);
        f << buf << '\t' << e.source << '\n';
    }
}

std::optional<ReferenceEntry> ReferenceCache::find(const std::string& model, const std::string& hash, int N) const {
    for (const auto& e : rows_)
        if (e.model == model && e.contract_hash == hash && e.N == N) return e;
    return std::nullopt;
}

void ReferenceCache::put(const ReferenceEntry& e) {
    for (auto& r : rows_) {
        if (r.model == e.model && r.contract_hash == e.contract_hash && r.N == e.N) {
            r = e;
            return;
        }
    }
    rows_.push_back(e);
}

Method reference_method(const RunConfig& cfg) {
    auto m = cfg.levy();
    return decay_class(m, cfg.contract.dt()).cls == Decay::Polynomial ? Method::FL_F : Method::FL;
}

ReferenceEntry compute_reference(const RunConfig& cfg) {
    auto m = cfg.levy();
    Method meth = reference_method(cfg);
    double x = cfg.resolved_xmax();
    GridSpec g = build_grid(cfg.reference_M, x);
    FilterSpec f = meth == Method::FL_F ? FilterSpec::exponential() : FilterSpec::none();
    auto r = price_fl(cfg.contract, m, g, f, cfg.fgm.exec);
    ReferenceEntry e;
    e.model = m.describe();
    e.contract_hash = cfg.contract.hash();
    e.N = cfg.contract.N;
    e.M = cfg.reference_M;
    e.x_max = x;
    e.price = r.price;
    e.source = std::string(method_name(meth)) + "@" + std::to_string(cfg.reference_M);
    return e;
}

std::optional<ReferenceEntry> resolve_reference(const RunConfig& cfg, bool compute) {
    auto m = cfg.levy();
    if (cfg.reference_price) {
        ReferenceEntry e;
        e.model = m.describe();
        e.contract_hash = cfg.contract.hash();
        e.N = cfg.contract.N;
        e.price = *cfg.reference_price;
        e.source = "config";
        return e;
    }
    ReferenceCache cache;
    if (!cfg.reference_cache.empty()) {
        cache = ReferenceCache::load(cfg.reference_cache);
        auto hit = cache.find(m.describe(), cfg.contract.hash(), cfg.contract.N);
        if (hit && hit->M == cfg.reference_M && hit->x_max == cfg.resolved_xmax()) {
            hit->source = "cache:" + hit->source;
            return hit;
        }
    }
    if (!compute) return std::nullopt;
    auto e = compute_reference(cfg);
    if (!cfg.reference_cache.empty()) {
        cache.put(e);
        cache.save(cfg.reference_cache);
    }
    return e;
}

double log2_slope(const std::vector<int>& M, const std::vector<double>& err) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t i = 0; i < M.size() && i < err.size(); ++i) {
        if (!(err[i] > 0.0)) continue;
        double x = std::log2(static_cast<double>(M[i])), y = std::log2(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return std::nan("");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<ConvergenceRow> run_sweep(const RunConfig& cfg, double reference) {
    if (cfg.M_list.empty()) throw ConfigError("grid.M_list", "empty sweep list");
    std::vector<Method> methods = cfg.converge_methods;
    if (methods.empty()) methods.push_back(cfg.method);
    for (Method me : methods) check_filter(cfg, me);
    auto m = cfg.levy();
    const double x = cfg.resolved_xmax();
    std::vector<ConvergenceRow> rows;
    // points run one after another so the timing column is not shared out between them
    for (Method me : methods) {
        for (int M : cfg.M_list) {
            GridSpec g = build_grid(M, x);
            auto r = price_with(me, cfg.contract, m, g, cfg.filter, cfg.zcfg, cfg.fgm);
            ConvergenceRow row;
            row.M = M;
            row.price = r.price;
            row.abs_error = std::abs(r.price - reference);
            row.cpu_seconds = r.cpu_seconds;
            row.avg_iterations = r.avg_iterations;
            row.method = me;
            row.filter = filter_used(me, cfg.filter);
            rows.push_back(row);
        }
    }
    return rows;
}

int cmd_price(const RunConfig& cfg, std::ostream& log) {
    check_filter(cfg, cfg.method);
    auto m = cfg.levy();
    const double x = cfg.resolved_xmax();
    GridSpec g = build_grid(cfg.M, x);
    auto r = price_with(cfg.method, cfg.contract, m, g, cfg.filter, cfg.zcfg, cfg.fgm);
    auto ref = resolve_reference(cfg, false);

    log << "model      " << m.describe() << '\n';
    log << "method     " << method_name(cfg.method) << "  filter " << filter_used(cfg.method, cfg.filter) << '\n';
    log << "grid       M=" << cfg.M << "  x_max=" << fmt_num(x) << '\n';
    log << "price      " << fmt_num(r.price) << '\n';
    if (ref) log << "reference  " << fmt_num(ref->price) << "  (" << ref->source << ")  error " << fmt_num(r.price - ref->price) << '\n';
    log << "time       " << fmt_num(r.cpu_seconds) << " s\n";
    if (method_is_fgm(cfg.method)) {
        log << "contour    " << r.contour_points << " points, euler spread " << fmt_num(r.inversion_spread) << '\n';
        if (cfg.contract.has_upper())
            log << "iterations " << fmt_num(r.avg_iterations) << " avg, " << r.max_iter_hits << " at max_iter\n";
    }

    if (!cfg.output_path.empty()) {
        CsvSink sink(cfg.output_path, log);
        auto& o = sink.out();
        o << "method,filter,M,x_max,price,cpu_seconds,avg_iterations,reference,abs_error\n";
        o << method_name(cfg.method) << ',' << filter_used(cfg.method, cfg.filter) << ',' << cfg.M << ',' << fmt_num(x)
          << ',' << fmt_num(r.price) << ',' << fmt_num(r.cpu_seconds) << ',' << fmt_num(r.avg_iterations) << ','
          << (ref ? fmt_num(ref->price) : "nan") << ',' << (ref ? fmt_num(std::abs(r.price - ref->price)) : "nan")
          << '\n';
    }
    return 0;
}

int cmd_converge(const RunConfig& cfg, std::ostream& log) {
    if (cfg.M_list.empty()) throw ConfigError("grid.M_list", "empty sweep list");
    auto ref = resolve_reference(cfg, true);
    auto rows = run_sweep(cfg, ref->price);

    {
        CsvSink sink(cfg.output_path, log);
        auto& o = sink.out();
        o << "method,filter,M,price,abs_error,cpu_seconds,avg_iterations,reference,reference_source\n";
        for (const auto& r : rows)
            o << method_name(r.method) << ',' << r.filter << ',' << r.M << ',' << fmt_num(r.price) << ','
              << fmt_num(r.abs_error) << ',' << fmt_num(r.cpu_seconds) << ',' << fmt_num(r.avg_iterations) << ','
              << fmt_num(ref->price) << ',' << ref->source << '\n';
    }

    std::vector<Method> methods = cfg.converge_methods;
    if (methods.empty()) methods.push_back(cfg.method);
    std::ostringstream slopes;
    slopes << "method,slope,points\n";
    for (Method me : methods) {
        std::vector<int> Ms;
        std::vector<double> es;
        for (const auto& r : rows)
            if (r.method == me) {
                Ms.push_back(r.M);
                es.push_back(r.abs_error);
            }
        slopes << method_name(me) << ',' << fmt_num(log2_slope(Ms, es)) << ',' << Ms.size() << '\n';
    }
    if (cfg.output_path.empty()) {
        log << slopes.str();
        return 0;
    }
    const std::string base = stem(cfg.output_path);
    {
        std::ofstream f(base + ".slopes.csv");
        if (!f) throw ConfigError("output.path", "cannot write '" + base + ".slopes.csv'");
        f << slopes.str();
    }
    {
        std::ofstream f(base + ".gp");
        if (!f) throw ConfigError("output.path", "cannot write '" + base + ".gp'");
        std::string csv = cfg.output_path;
        auto slash = csv.find_last_of('/');
        if (slash != std::string::npos) csv = csv.substr(slash + 1);
        f << "set datafile separator ','\n"
          << "set logscale xy 2\n"
          << "set format y '%.0e'\n"
          << "set xlabel 'M'\n"
          << "set ylabel 'abs error'\n"
          << "plot \\\n";
        for (size_t i = 0; i < methods.size(); ++i) {
            f << "  '" << csv << "' using (strcol(1) eq '" << method_name(methods[i])
              << "' ? $3 : 1/0):5 with linespoints title '" << method_name(methods[i]) << "'"
              << (i + 1 < methods.size() ? ", \\\n" : "\n");
        }
    }
    log << slopes.str();
    return 0;
}

int cmd_gibbs_demo(const RunConfig& cfg, std::ostream& log) {
    const FilterSpec f = cfg.filter.active() ? cfg.filter : FilterSpec::exponential();
    std::vector<GibbsSummary> sums;
    for (int M : cfg.gibbs_M_list) sums.push_back(gibbs_summary(M, f));

    if (!cfg.output_path.empty()) {
        std::ofstream o(cfg.output_path);
        if (!o) throw ConfigError("output.path", "cannot write '" + cfg.output_path + "'");
        o << "M,x,exact,recovered,error,filtered,filtered_error\n";
        for (int M : cfg.gibbs_M_list)
            for (const auto& p : gibbs_samples(M, f))
                o << M << ',' << fmt_num(p.x) << ',' << fmt_num(p.exact) << ',' << fmt_num(p.recovered) << ','
                  << fmt_num(p.recovered - p.exact) << ',' << fmt_num(p.filtered) << ','
                  << fmt_num(p.filtered - p.exact) << '\n';
    }
    std::ostringstream s;
    s << "M,jump_value,peak_error,interior_error,interior_error_filtered,crossings\n";
    for (const auto& r : sums)
        s << r.M << ',' << fmt_num(r.jump_value) << ',' << fmt_num(r.peak_error) << ',' << fmt_num(r.interior_error)
          << ',' << fmt_num(r.interior_error_filtered) << ',' << r.crossings << '\n';
    if (!cfg.output_path.empty()) {
        std::ofstream o(stem(cfg.output_path) + ".summary.csv");
        o << s.str();
    }
    log << s.str();

    bool ok = true;
    auto check = [&](bool pass, const std::string& what) {
        log << (pass ? "ok    " : "FAIL  ") << what << '\n';
        ok = ok && pass;
    };
    for (const auto& r : sums)
        check(std::abs(r.jump_value - 0.5) <= 0.5 / r.M, "M=" + std::to_string(r.M) + " jump value " + fmt_num(r.jump_value) + " vs 0.5");
    for (size_t i = 1; i < sums.size(); ++i) {
        if (sums[i].M != 2 * sums[i - 1].M) continue;
        double ratio = sums[i - 1].interior_error / sums[i].interior_error;
        check(ratio >= 1.6 && ratio <= 2.4, "interior error ratio M=" + std::to_string(sums[i - 1].M) + "->" +
                                                std::to_string(sums[i].M) + " " + fmt_num(ratio));
    }
    double pmin = 1e300, pmax = 0.0;
    for (const auto& r : sums)
        if (r.M >= 128) {
            pmin = std::min(pmin, r.peak_error);
            pmax = std::max(pmax, r.peak_error);
        }
    if (pmax > 0.0) check(pmax / pmin - 1.0 <= 0.05, "peak error spread over M>=128 " + fmt_num(pmax / pmin - 1.0));
    return ok ? 0 : 3;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& log) {
    auto m = cfg.levy();
    auto ref = resolve_reference(cfg, true);
    auto q = quad_price_detailed(cfg.contract, m, cfg.oracle);
    std::optional<McResult> mc;
    if (cfg.oracle_mc) mc = mc_price(cfg.contract, m, cfg.oracle);

    CsvSink sink(cfg.output_path, log);
    auto& o = sink.out();
    o << "source,price,std_error,diff_vs_reference,z_score\n";
    o << ref->source << ',' << fmt_num(ref->price) << ",0,0,0\n";
    o << "quad," << fmt_num(q.price) << ",0," << fmt_num(q.price - ref->price) << ",nan\n";
    if (mc) {
        double z = mc->std_error > 0 ? (mc->price - ref->price) / mc->std_error : 0.0;
        o << "mc," << fmt_num(mc->price) << ',' << fmt_num(mc->std_error) << ',' << fmt_num(mc->price - ref->price)
          << ',' << fmt_num(z) << '\n';
    }
    if (!cfg.output_path.empty()) {
        log << "reference " << fmt_num(ref->price) << " (" << ref->source << ")\n";
        log << "quad      " << fmt_num(q.price) << "  diff " << fmt_num(q.price - ref->price) << '\n';
        if (mc)
            log << "mc        " << fmt_num(mc->price) << " +- " << fmt_num(mc->std_error) << "  diff "
                << fmt_num(mc->price - ref->price) << '\n';
    }
    if (q.mass_warning) log << "warning: quadrature weight grid holds mass " << fmt_num(q.grid_mass) << '\n';
    return 0;
}

int cmd_filters_dump(const RunConfig& cfg, std::ostream& log) {
    FilterSpec e = FilterSpec::exponential(cfg.filter.p, cfg.filter.theta);
    FilterSpec p = FilterSpec::planck(cfg.filter.eps);
    CsvSink sink(cfg.output_path, log);
    auto& o = sink.out();
    o << "eta,exponential,planck\n";
    const int n = cfg.dump_points;
    for (int i = 0; i < n; ++i) {
        double eta = -1.0 + 2.0 * i / (n - 1);
        o << fmt_num(eta) << ',' << fmt_num(eval_filter(e, eta)) << ',' << fmt_num(eval_filter(p, eta)) << '\n';
    }
    return 0;
}

} // namespace sbar
