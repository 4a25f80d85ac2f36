#pragma once

#include "sbar/spectral_grid.hpp"

#include <string>
#include <vector>

namespace sbar {

enum class FilterKind { None, Exponential, PlanckTaper };

struct FilterSpec {
    FilterKind kind = FilterKind::None;
    int p = 12;
    double theta = 36.841361487904734; // 16 ln 10, so e^{-theta} = 1e-16
    double eps = 0.25;

    static FilterSpec none() { return {}; }
    static FilterSpec exponential(int p = 12, double theta = 36.841361487904734) {
        return {FilterKind::Exponential, p, theta, 0.25};
    }
    static FilterSpec planck(double eps = 0.25) { return {FilterKind::PlanckTaper, 12, 36.841361487904734, eps}; }

    bool active() const { return kind != FilterKind::None; }
    void validate() const;
    // "none", "exp(p=12,theta=36.84)", "planck(eps=0.25)"
    std::string describe() const;
};

// sigma(eta) for |eta| <= 1
double eval_filter(const FilterSpec& spec, double eta);

// sigma(xi_k / xi_max) with eta_k = k / (M/2)
std::vector<double> filter_samples(const FilterSpec& spec, const GridSpec& grid);

SampledSpectrum apply_filter(const FilterSpec& spec, const SampledSpectrum& f);

const char* filter_kind_name(FilterKind k);

} // namespace sbar
