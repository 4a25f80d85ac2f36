#include "sbar/pricers.hpp"

#include "sbar/hilbert.hpp"
#include "sbar/wiener_hopf.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <vector>

namespace sbar {

const char* method_name(Method m) {
    switch (m) {
    case Method::FGM: return "FGM";
    case Method::FGM_F: return "FGM-F";
    case Method::FL: return "FL";
    case Method::FL_F: return "FL-F";
    }
    return "?";
}

bool method_filtered(Method m) { return m == Method::FGM_F || m == Method::FL_F; }
bool method_is_fgm(Method m) { return m == Method::FGM || m == Method::FGM_F; }

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Psi(sign*xi + i alpha, dt) on the grid, after checking alpha against the strip
std::vector<cplx> psi_samples(const LevyModel& m, const GridSpec& g, double alpha, double dt, double sign) {
    (void)m.exponent(cplx(0.0, alpha));
    std::vector<cplx> psi(static_cast<size_t>(g.M));
    for (int i = 0; i < g.M; ++i) psi[i] = std::exp(m.exponent_unchecked(cplx(sign * g.xi_at(i), alpha)) * dt);
    return psi;
}

std::vector<double> sigma_or_ones(const FilterSpec& f, const GridSpec& g) {
    if (!f.active()) return std::vector<double>(static_cast<size_t>(g.M), 1.0);
    return filter_samples(f, g);
}

bool filter_factorization(const FgmOptions& opt, const LevyModel& m, double dt) {
    switch (opt.factor_filter) {
    case FactorFilter::On: return true;
    case FactorFilter::Off: return false;
    case FactorFilter::Auto: return decay_class(m, dt).cls == Decay::Polynomial;
    }
    return false;
}

void check_fgm_inputs(const OptionContract& c, const GridSpec& g, const ZInversionConfig& zcfg) {
    c.validate();
    if (c.N < 3) throw InvalidArgument("fgm: needs N >= 3 (the z-inversion targets date N-2)");
    if (!(c.l() > -g.x_max)) throw InvalidArgument("fgm: lower barrier must lie inside the grid");
    ZInversionConfig z = zcfg;
    z.n = c.N - 2;
    z.validate();
}

struct PointOutcome {
    cplx value;
    int iterations = 0;
    bool hit_max = false;
};

// run f over every contour point; serial or OpenMP, identical results either way
template <class F>
std::vector<PointOutcome> over_contour(const std::vector<cplx>& q, Exec exec, F&& f) {
    const int J = static_cast<int>(q.size());
    std::vector<PointOutcome> out(static_cast<size_t>(J));
    std::exception_ptr err;
    std::mutex err_mu;
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::Parallel)
    for (int j = 0; j < J; ++j) {
        try {
            out[j] = f(q[j]);
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mu);
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return out;
}

PricingResult finish_fgm(const std::vector<PointOutcome>& pts, const ZInversionConfig& z, const OptionContract& c,
                         const GridSpec& g, const FilterSpec& filter) {
    std::vector<cplx> vals(pts.size());
    double it = 0.0;
    int hits = 0;
    for (size_t j = 0; j < pts.size(); ++j) {
        vals[j] = pts[j].value;
        it += pts[j].iterations;
        hits += pts[j].hit_max ? 1 : 0;
    }
    PricingResult r;
    double disc = std::exp(-c.r * c.T);
    r.price = disc * invert(vals, z);
    r.inversion_spread = disc * euler_spread(vals, z);
    // the value at the real point q = rho must itself be real
    r.imag_part = disc * std::abs(vals[0].imag()) / (2.0 * z.n * std::pow(z.rho(), z.n));
    r.avg_iterations = it / static_cast<double>(pts.size());
    r.max_iter_hits = hits;
    r.contour_points = static_cast<int>(pts.size());
    r.grid_M = g.M;
    r.x_max = g.x_max;
    r.filter = filter;
    if (!std::isfinite(r.price)) throw NumericalFailure("fgm: non-finite price");
    return r;
}

} // namespace

PricingResult price_fgm_single(const OptionContract& c, const LevyModel& m, const GridSpec& g,
                               const FilterSpec& filter, const ZInversionConfig& zcfg, const FgmOptions& opt) {
    check_fgm_inputs(c, g, zcfg);
    if (c.has_upper()) throw InvalidArgument("fgm single: contract has a finite upper barrier");
    filter.validate();
    auto kernel = kernel_for(g);
    ZInversionConfig z = zcfg;
    z.n = c.N - 2;
    const int M = g.M;
    const double l = c.l();

    auto t0 = Clock::now();
    const auto psi = psi_samples(m, g, c.alpha, c.dt(), 1.0);
    const auto sig = sigma_or_ones(filter, g);
    const auto ph = damped_payoff_fourier(c, g);
    const auto e_ml = phase_vector(g, -l);
    const auto e_l = phase_vector(g, l);
    // the single-barrier scheme filters Phi, P and the closing Psi (nothing when filter is none)
    auto contour = contour_points(z);

    auto point = [&](cplx q) {
        std::vector<cplx> phi(M), pp(M), pm(M), P(M);
        for (int i = 0; i < M; ++i) phi[i] = 1.0 - q * psi[i] * sig[i];
        factorize_raw(*kernel, phi.data(), pp.data(), pm.data());
        for (int i = 0; i < M; ++i) P[i] = e_ml[i] * psi[i] * sig[i] / pm[i];
        plemelj_plus(*kernel, P.data(), P.data());
        cplx s = 0.0;
        for (int i = 0; i < M; ++i) s += std::conj(ph.values[i]) * psi[i] * sig[i] * e_l[i] * P[i] / pp[i];
        PointOutcome o;
        o.value = s * (g.dxi / (2.0 * std::numbers::pi));
        o.iterations = 1;
        return o;
    };
    auto pts = over_contour(contour.points, opt.exec, point);
    PricingResult r = finish_fgm(pts, z, c, g, filter);
    r.avg_iterations = 0.0;
    r.method = filter.active() ? Method::FGM_F : Method::FGM;
    r.cpu_seconds = seconds_since(t0);
    return r;
}

PricingResult price_fgm_double(const OptionContract& c, const LevyModel& m, const GridSpec& g,
                               const FilterSpec& filter, const ZInversionConfig& zcfg, double tol, int max_iter,
                               const FgmOptions& opt) {
    check_fgm_inputs(c, g, zcfg);
    if (!c.has_upper()) throw InvalidArgument("fgm double: contract has no upper barrier");
    if (!(std::log(c.U / c.S0) < g.x_max)) throw InvalidArgument("fgm double: upper barrier must lie inside the grid");
    if (!(tol > 0.0) || max_iter < 1) throw InvalidArgument("fgm double: need tol > 0 and max_iter >= 1");
    filter.validate();
    auto kernel = kernel_for(g);
    ZInversionConfig z = zcfg;
    z.n = c.N - 2;
    const int M = g.M;
    const double l = c.l();
    const double u = c.u(g.x_max);
    const double scale = g.dxi / (2.0 * std::numbers::pi);

    auto t0 = Clock::now();
    const auto psi = psi_samples(m, g, c.alpha, c.dt(), 1.0);
    const auto sig = sigma_or_ones(filter, g);
    const bool fact = filter.active() && filter_factorization(opt, m, c.dt());
    const auto ph = damped_payoff_fourier(c, g);
    const auto e_ml = phase_vector(g, -l), e_mu = phase_vector(g, -u);
    const auto e_uml = phase_vector(g, u - l), e_lmu = phase_vector(g, l - u);
    const auto e_l = phase_vector(g, l), e_u = phase_vector(g, u);
    std::vector<cplx> lead(M); // conj(phi_hat) Psi, filtered along with the factorisation
    for (int i = 0; i < M; ++i) lead[i] = std::conj(ph.values[i]) * psi[i] * (fact ? sig[i] : 1.0);
    auto contour = contour_points(z);

    auto point = [&](cplx q) {
        std::vector<cplx> phi(M), pp(M), pm(M), Jp(M, 0.0), Jm(M, 0.0), W(M);
        for (int i = 0; i < M; ++i) phi[i] = 1.0 - q * psi[i] * (fact ? sig[i] : 1.0);
        factorize_raw(*kernel, phi.data(), pp.data(), pm.data());
        PointOutcome o;
        cplx prev = 0.0;
        for (int it = 1;; ++it) {
            // P = sigma (e^{-il xi} Psi - e^{i(u-l) xi} J+) / Phi-, J- = minus(P) Phi-
            for (int i = 0; i < M; ++i) W[i] = sig[i] * (e_ml[i] * psi[i] - e_uml[i] * Jp[i]) / pm[i];
            plemelj_plus(*kernel, W.data(), Jm.data());
            for (int i = 0; i < M; ++i) Jm[i] = (W[i] - Jm[i]) * pm[i];
            // Q = sigma (e^{-iu xi} Psi - e^{i(l-u) xi} J-) / Phi+, J+ = plus(Q) Phi+
            for (int i = 0; i < M; ++i) W[i] = sig[i] * (e_mu[i] * psi[i] - e_lmu[i] * Jm[i]) / pp[i];
            plemelj_plus(*kernel, W.data(), Jp.data());
            for (int i = 0; i < M; ++i) Jp[i] *= pp[i];

            cplx s = 0.0;
            for (int i = 0; i < M; ++i) s += lead[i] / phi[i] * (psi[i] - e_l[i] * Jm[i] - e_u[i] * Jp[i]);
            cplx v = s * scale;
            o.iterations = it;
            bool done = it > 1 && std::abs(v - prev) < tol;
            prev = v;
            if (done) break;
            if (it >= max_iter) {
                o.hit_max = true;
                break;
            }
        }
        o.value = prev;
        return o;
    };
    auto pts = over_contour(contour.points, opt.exec, point);
    PricingResult r = finish_fgm(pts, z, c, g, filter);
    r.method = filter.active() ? Method::FGM_F : Method::FGM;
    r.cpu_seconds = seconds_since(t0);
    return r;
}

PricingResult price_fl(const OptionContract& c, const LevyModel& m, const GridSpec& g, const FilterSpec& filter,
                       Exec exec) {
    c.validate();
    filter.validate();
    auto kernel = kernel_for(g);
    const int M = g.M;
    const double l = c.l();
    const bool lower = c.has_lower() && l > -g.x_max;
    const bool upper = c.has_upper() && std::log(c.U / c.S0) < g.x_max;
    const double u = c.u(g.x_max);
    const bool par = exec == Exec::Parallel && M >= (1 << 14);

    auto t0 = Clock::now();
    // backward step uses the transition kernel read from the other side: Psi(-xi + i alpha)
    const auto psi = psi_samples(m, g, c.alpha, c.dt(), -1.0);
    const auto sig = sigma_or_ones(filter, g);
    std::vector<cplx> step(M);
#pragma omp parallel for if (par)
    for (int i = 0; i < M; ++i) step[i] = sig[i] * psi[i];

    std::vector<cplx> v = damped_payoff_fourier(c, g).values;
    for (int n = 0; n < c.N - 1; ++n) {
#pragma omp parallel for if (par)
        for (int i = 0; i < M; ++i) v[i] *= step[i];
        if (lower && upper)
            window_raw(*kernel, v.data(), l, u, v.data());
        else if (lower)
            plemelj_shifted(*kernel, v.data(), l, Side::Above, v.data());
        else if (upper)
            plemelj_shifted(*kernel, v.data(), u, Side::Below, v.data());
    }
    // the last transition carries the filter too, else the O(1/xi) tail of v survives into the sum
    for (int i = 0; i < M; ++i) v[i] *= step[i];
    cplx val = inverse_at_zero(g, v.data());

    PricingResult r;
    double disc = std::exp(-c.r * c.T);
    r.price = disc * val.real();
    r.imag_part = disc * std::abs(val.imag());
    r.grid_M = M;
    r.x_max = g.x_max;
    r.filter = filter;
    r.method = filter.active() ? Method::FL_F : Method::FL;
    r.cpu_seconds = seconds_since(t0);
    if (!std::isfinite(r.price)) throw NumericalFailure("fl: non-finite price");
    return r;
}

PricingResult price_with(Method method, const OptionContract& c, const LevyModel& m, const GridSpec& g,
                         const FilterSpec& filter, const ZInversionConfig& zcfg, const FgmOptions& opt) {
    FilterSpec f = FilterSpec::none();
    if (method_filtered(method)) f = filter.active() ? filter : FilterSpec::exponential();
    if (method_is_fgm(method)) {
        if (c.has_upper()) return price_fgm_double(c, m, g, f, zcfg, opt.tol, opt.max_iter, opt);
        return price_fgm_single(c, m, g, f, zcfg, opt);
    }
    return price_fl(c, m, g, f, opt.exec);
}

} // namespace sbar
