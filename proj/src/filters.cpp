#include "sbar/filters.hpp"

#include <cmath>
#include <cstdio>

namespace sbar {

void FilterSpec::validate() const {
    switch (kind) {
    case FilterKind::None:
        return;
    case FilterKind::Exponential:
        if (p < 2 || p % 2 != 0) throw InvalidArgument("filter: exponential order p must be even and >= 2");
        if (!(theta > 0.0)) throw InvalidArgument("filter: theta must be positive");
        return;
    case FilterKind::PlanckTaper:
        if (!(eps > 0.0 && eps < 0.5)) throw InvalidArgument("filter: planck eps must lie in (0, 0.5)");
        return;
    }
}

std::string FilterSpec::describe() const {
    char buf[96];
    switch (kind) {
    case FilterKind::None:
        return "none";
    case FilterKind::Exponential:
        std::snprintf(buf, sizeof buf, "exp(p=%d,theta=%.4g)", p, theta);
        return buf;
    case FilterKind::PlanckTaper:
        std::snprintf(buf, sizeof buf, "planck(eps=%.4g)", eps);
        return buf;
    }
    return "?";
}

namespace {

// 1 / (e^z + 1) without overflow
double logistic_tail(double z) {
    if (z > 700.0) return 0.0;
    return 1.0 / (std::exp(z) + 1.0);
}

double planck(double eps, double eta) {
    const double e1 = -1.0, e2 = eps - 1.0, e3 = 1.0 - eps, e4 = 1.0;
    if (eta <= e1 || eta >= e4) return 0.0;
    if (eta < e2) {
        double z = (e2 - e1) / (eta - e1) + (e2 - e1) / (eta - e2);
        return logistic_tail(z);
    }
    if (eta <= e3) return 1.0;
    double z = (e3 - e4) / (eta - e3) + (e3 - e4) / (eta - e4);
    return logistic_tail(z);
}

} // namespace

double eval_filter(const FilterSpec& spec, double eta) {
    if (!(std::abs(eta) <= 1.0)) throw DomainError("filter: |eta| > 1");
    switch (spec.kind) {
    case FilterKind::None:
        return 1.0;
    case FilterKind::Exponential:
        return std::exp(-spec.theta * std::pow(eta, spec.p));
    case FilterKind::PlanckTaper:
        return planck(spec.eps, eta);
    }
    return 1.0;
}

std::vector<double> filter_samples(const FilterSpec& spec, const GridSpec& grid) {
    spec.validate();
    std::vector<double> s(static_cast<size_t>(grid.M));
    const int h = grid.half();
    for (int i = 0; i < grid.M; ++i) s[i] = eval_filter(spec, static_cast<double>(i - h) / h);
    return s;
}

SampledSpectrum apply_filter(const FilterSpec& spec, const SampledSpectrum& f) {
    if (!spec.active()) return f;
    auto s = filter_samples(spec, f.grid);
    SampledSpectrum out(f.grid);
    for (int i = 0; i < f.grid.M; ++i) out.values[i] = s[i] * f.values[i];
    return out;
}

const char* filter_kind_name(FilterKind k) {
    switch (k) {
    case FilterKind::None: return "none";
    case FilterKind::Exponential: return "exponential";
    case FilterKind::PlanckTaper: return "planck";
    }
    return "?";
}

} // namespace sbar
