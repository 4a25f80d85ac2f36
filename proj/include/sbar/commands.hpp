#pragma once

#include "sbar/config.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sbar {

// "%.12e"
std::string fmt_num(double x);

struct ConvergenceRow {
    int M = 0;
    double price = 0.0;
    double abs_error = 0.0;
    double cpu_seconds = 0.0;
    double avg_iterations = 0.0;
    Method method = Method::FL;
    std::string filter;
};

// tab-separated: model, contract_hash, N, M, x_max, price, source
struct ReferenceEntry {
    std::string model;
    std::string contract_hash;
    int N = 0;
    int M = 0;
    double x_max = 0.0;
    double price = 0.0;
    std::string source;
};

class ReferenceCache {
public:
    static ReferenceCache load(const std::string& path); // missing file -> empty
    void save(const std::string& path) const;
    std::optional<ReferenceEntry> find(const std::string& model, const std::string& hash, int N) const;
    void put(const ReferenceEntry& e);
    const std::vector<ReferenceEntry>& entries() const { return rows_; }

private:
    std::vector<ReferenceEntry> rows_;
};

// FL at reference.M (filtered when Psi decays polynomially)
Method reference_method(const RunConfig& cfg);
ReferenceEntry compute_reference(const RunConfig& cfg);
// reference.price, then the cache, then (if allowed) a fresh computation stored back to the cache
std::optional<ReferenceEntry> resolve_reference(const RunConfig& cfg, bool compute);

// least-squares slope of log2 error against log2 M, zero errors skipped; NaN with < 2 points
double log2_slope(const std::vector<int>& M, const std::vector<double>& err);

std::vector<ConvergenceRow> run_sweep(const RunConfig& cfg, double reference);

int cmd_price(const RunConfig& cfg, std::ostream& log);
int cmd_converge(const RunConfig& cfg, std::ostream& log);
int cmd_gibbs_demo(const RunConfig& cfg, std::ostream& log);
int cmd_oracle(const RunConfig& cfg, std::ostream& log);
int cmd_filters_dump(const RunConfig& cfg, std::ostream& log);

} // namespace sbar
