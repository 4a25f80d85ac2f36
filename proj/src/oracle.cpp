#include "sbar/oracle.hpp"

#include "sbar/fft.hpp"
#include "sbar/grid_policy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace sbar {

void OracleConfig::validate() const {
    if (quad_points < (1 << 12)) throw InvalidArgument("oracle: quad_points must be >= 4096");
    if (mc_paths < 10000) throw InvalidArgument("oracle: mc_paths must be >= 10000");
    if (!(stderr_mult > 0.0)) throw InvalidArgument("oracle: stderr_mult must be positive");
}

namespace {

const cplx kI(0.0, 1.0);

// hat-kernel weights for p(z_m), z_m = delta + m h, m in [m_lo, m_hi]:
//   BR(m) = int_0^h (1 - s/h) p(z_m + s) ds, BL(m) = int_{-h}^0 (1 + s/h) p(z_m + s) ds, A = BL + BR
struct HatWeights {
    long m_lo = 0;
    std::vector<double> BL, BR;
    double mass = 1.0;

    double left(long m) const { return BL[static_cast<size_t>(m - m_lo)]; }
    double right(long m) const { return BR[static_cast<size_t>(m - m_lo)]; }
    double full(long m) const { return left(m) + right(m); }
};

// int_0^1 (1-u) e^{-i t u} du
cplx half_hat_unit(double t) {
    if (std::abs(t) < 0.5) {
        cplx s = 0.0, term = 1.0;
        double fact = 1.0;
        for (int n = 0; n < 24; ++n) {
            if (n > 0) {
                term *= cplx(0.0, -t);
                fact *= n;
            }
            s += term / (fact * (n + 1.0) * (n + 2.0));
        }
        return s;
    }
    cplx it = kI * t;
    return 1.0 / it - (1.0 - std::exp(-it)) / (it * it);
}

HatWeights fourier_weights(const LevyModel& m, double dt, double h, double delta, long m_lo, long m_hi, double pad) {
    long need = std::max(std::labs(m_lo), std::labs(m_hi)) + static_cast<long>(std::ceil((pad + std::abs(delta)) / h));
    long K = 8;
    while (K / 2 <= need) K *= 2;
    const double dxi = 2.0 * std::numbers::pi / (K * h);
    std::vector<cplx> a(static_cast<size_t>(K));
    for (long i = 0; i < K; ++i) {
        double xi = (i - K / 2) * dxi;
        cplx psi = std::exp(m.exponent_unchecked(cplx(xi, 0.0)) * dt);
        cplx gr = psi * h * half_hat_unit(xi * h);
        cplx gl = psi * h * half_hat_unit(-xi * h);
        // both inverse transforms are real: pack them as re + i im
        cplx v = (gr + kI * gl) * std::polar(1.0, -xi * delta);
        a[i] = (i & 1) ? -v : v;
    }
    fft::transform(a.data(), static_cast<int>(K), -1);
    const double scale = 1.0 / (K * h);
    HatWeights w;
    w.m_lo = m_lo;
    w.BL.resize(static_cast<size_t>(m_hi - m_lo + 1));
    w.BR.resize(w.BL.size());
    double inner = 0.0;
    for (long j = 0; j < K; ++j) {
        long mm = j - K / 2;
        cplx g = a[j] * ((j & 1) ? -scale : scale);
        double z = delta + mm * h;
        if (std::abs(z) <= 0.25 * K * h) inner += g.real() + g.imag();
        if (mm >= m_lo && mm <= m_hi) {
            w.BR[static_cast<size_t>(mm - m_lo)] = g.real();
            w.BL[static_cast<size_t>(mm - m_lo)] = g.imag();
        }
    }
    w.mass = inner;
    return w;
}

// Gauss-Legendre nodes on [-1, 1]
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& wt) {
    x.resize(n);
    wt.resize(n);
    for (int i = 0; i < n; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (z * p1 - p0) / (z * z - 1.0);
            double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (z * p1 - p0) / (z * z - 1.0);
        x[i] = z;
        wt[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
}

// X | G ~ N(a dt + theta G, sigma^2 G), G ~ Gamma(dt/nu, nu).
// With G = nu t^{1/s}, s = dt/nu, the gamma density becomes e^{-t^{1/s}} / Gamma(s+1) dt.
HatWeights vg_weights(const LevyModel& m, double dt, double h, double delta, long m_lo, long m_hi) {
    const auto& P = m.vg_params();
    const double s = dt / P.nu;
    const double t_max = std::pow(46.0, s);
    const int panels = 96, order = 8;
    std::vector<double> gx, gw;
    gauss_legendre(order, gx, gw);

    HatWeights w;
    w.m_lo = m_lo;
    const size_t len = static_cast<size_t>(m_hi - m_lo + 1);
    w.BL.assign(len, 0.0);
    w.BR.assign(len, 0.0);
    const double norm = 1.0 / std::tgamma(s + 1.0);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    const double inv_sqrt2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    double total = 0.0;

    for (int pnl = 0; pnl < panels; ++pnl) {
        double t0 = t_max * pnl / panels, t1 = t_max * (pnl + 1) / panels;
        for (int q = 0; q < order; ++q) {
            double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * gx[q];
            double tw = 0.5 * (t1 - t0) * gw[q] * norm * std::exp(-std::pow(t, 1.0 / s));
            if (tw == 0.0) continue;
            total += tw;
            double G = P.nu * std::pow(t, 1.0 / s);
            double mu = m.drift() * dt + P.theta * G;
            double sd = P.sigma * std::sqrt(G);
            // upper tail and pdf of the conditional normal, as functions of z
            auto Q = [&](double z) { return 0.5 * std::erfc((z - mu) * inv_sqrt2 / sd); };
            auto f = [&](double z) {
                double u = (z - mu) / sd;
                return inv_sqrt2pi / sd * std::exp(-0.5 * u * u);
            };
            // only nodes within reach of the conditional density matter
            double reach = 12.0 * sd + 2.0 * h;
            long a = static_cast<long>(std::floor((mu - reach - delta) / h));
            long b = static_cast<long>(std::ceil((mu + reach - delta) / h));
            a = std::max(a, m_lo);
            b = std::min(b, m_hi);
            for (long mm = a; mm <= b; ++mm) {
                double z = delta + mm * h;
                double qm = Q(z - h), q0 = Q(z), qp = Q(z + h);
                double fm = f(z - h), f0 = f(z), fp = f(z + h);
                double var = sd * sd;
                // mass on [z, z+h] and [z-h, z]
                double mr = q0 - qp, ml = qm - q0;
                double br = mr * (1.0 + (z - mu) / h) + var / h * (fp - f0);
                double bl = ml * (1.0 - (z - mu) / h) - var / h * (f0 - fm);
                size_t idx = static_cast<size_t>(mm - m_lo);
                w.BR[idx] += tw * br;
                w.BL[idx] += tw * bl;
            }
        }
    }
    w.mass = total;
    return w;
}

HatWeights hat_weights(const LevyModel& m, double dt, double h, double delta, long m_lo, long m_hi, double pad) {
    if (m.kind() == ModelKind::VG) return vg_weights(m, dt, h, delta, m_lo, m_hi);
    return fourier_weights(m, dt, h, delta, m_lo, m_hi, pad);
}

// c_i = sum_j v_j A(j - i) for i, j in [0, n], by FFT
class ToeplitzStep {
public:
    ToeplitzStep(const HatWeights& w, long n) : n_(n) {
        L_ = 8;
        while (L_ < 2 * n + 2) L_ *= 2;
        kern_.assign(static_cast<size_t>(L_), cplx(0.0));
        // convolution form: c_i = sum_j v_j R(i - j), R(d) = A(-d)
        for (long d = -n; d <= n; ++d) kern_[static_cast<size_t>((d + L_) % L_)] = w.full(-d);
        fft::transform(kern_.data(), static_cast<int>(L_), -1);
        for (auto& v : kern_) v /= static_cast<double>(L_);
        buf_.resize(static_cast<size_t>(L_));
    }

    void apply(const std::vector<double>& v, std::vector<double>& out) {
        std::fill(buf_.begin(), buf_.end(), cplx(0.0));
        for (long j = 0; j <= n_; ++j) buf_[j] = v[j];
        fft::transform(buf_.data(), static_cast<int>(L_), -1);
        for (long i = 0; i < L_; ++i) buf_[i] *= kern_[i];
        fft::transform(buf_.data(), static_cast<int>(L_), +1);
        for (long i = 0; i <= n_; ++i) out[i] = buf_[i].real();
    }

private:
    long n_;
    long L_;
    std::vector<cplx> kern_, buf_;
};

double truncation_distance(const LevyModel& m, const OptionContract& c) {
    if (m.kind() == ModelKind::Gaussian) {
        double sd = m.gaussian_params().sigma * std::sqrt(c.T);
        return 8.5 * sd + sd * sd;
    }
    double right = 0.0, left = 0.0;
    tail_rates(m, right, left);
    return std::log(1e11) / std::min(left, right - 1.0);
}

} // namespace

QuadResult quad_price_detailed(const OptionContract& c, const LevyModel& m, const OracleConfig& cfg) {
    c.validate();
    cfg.validate();
    const double k = c.k();
    const double D = truncation_distance(m, c);
    double lo = c.has_lower() ? c.l() : k - D;
    double hi = c.has_upper() ? std::log(c.U / c.S0) : std::max(k, lo) + D;
    if (!c.has_lower() && c.has_upper()) lo = std::min(lo, hi - D);
    QuadResult res;
    res.lo = lo;
    res.hi = hi;
    const long n = cfg.quad_points;
    const double h = (hi - lo) / n;
    const double dt = c.dt();
    const double pad = D + 1.0;

    std::vector<double> v(static_cast<size_t>(n + 1)), next(v.size());
    for (long j = 0; j <= n; ++j) {
        double S = c.S0 * std::exp(lo + j * h);
        v[j] = c.type == OptionType::Call ? std::max(S - c.K, 0.0) : std::max(c.K - S, 0.0);
    }

    double mass = 1.0;
    if (c.N > 1) {
        HatWeights w = hat_weights(m, dt, h, 0.0, -n, n, pad);
        mass = w.mass;
        ToeplitzStep step(w, n);
        for (int s = 0; s < c.N - 1; ++s) {
            step.apply(v, next);
            // end nodes carry half hats only
            double v0 = v[0], vn = v[n];
            for (long i = 0; i <= n; ++i) next[i] -= v0 * w.left(-i) + vn * w.right(n - i);
            v.swap(next);
        }
    }
    // last step from x = 0: p(y_j - 0) with y_j = lo + j h
    HatWeights w0 = hat_weights(m, dt, h, lo, 0, n, pad);
    mass = std::min(mass, w0.mass);
    double acc = 0.0;
    for (long j = 0; j <= n; ++j) {
        double wt = w0.full(j);
        if (j == 0) wt -= w0.left(0);
        if (j == n) wt -= w0.right(n);
        acc += v[j] * wt;
    }
    res.price = std::exp(-c.r * c.T) * acc;
    res.grid_mass = mass;
    res.mass_warning = mass < 1.0 - 1e-8;
    return res;
}

double quad_price(const OptionContract& c, const LevyModel& m, const OracleConfig& cfg) {
    return quad_price_detailed(c, m, cfg).price;
}

namespace {

// one increment of X over dt, zero drift part excluded
struct Sampler {
    const LevyModel& m;
    double dt;

    template <class Rng>
    double operator()(Rng& rng, std::normal_distribution<double>& nd) const {
        switch (m.kind()) {
        case ModelKind::Gaussian:
            return m.gaussian_params().sigma * std::sqrt(dt) * nd(rng);
        case ModelKind::Kou: {
            const auto& k = m.kou_params();
            double x = k.sigma * std::sqrt(dt) * nd(rng);
            std::poisson_distribution<int> pd(k.lambda * dt);
            int nj = pd(rng);
            std::uniform_real_distribution<double> ud(0.0, 1.0);
            for (int i = 0; i < nj; ++i) {
                double e = -std::log1p(-ud(rng));
                x += ud(rng) < k.p ? e / k.eta1 : -e / k.eta2;
            }
            return x;
        }
        case ModelKind::NIG: {
            // inverse-Gaussian time with mean delta dt / gamma and shape (delta dt)^2
            const auto& p = m.nig_params();
            double gam = std::sqrt(p.alpha * p.alpha - p.beta * p.beta);
            double mu = p.delta * dt / gam, lam = (p.delta * dt) * (p.delta * dt);
            double z = nd(rng);
            double y = z * z;
            double V = mu + mu * mu * y / (2.0 * lam) - mu / (2.0 * lam) * std::sqrt(4.0 * mu * lam * y + mu * mu * y * y);
            std::uniform_real_distribution<double> ud(0.0, 1.0);
            if (ud(rng) > mu / (mu + V)) V = mu * mu / V;
            return p.beta * V + std::sqrt(V) * nd(rng);
        }
        case ModelKind::VG: {
            const auto& p = m.vg_params();
            std::gamma_distribution<double> gd(dt / p.nu, p.nu);
            double G = gd(rng);
            return p.theta * G + p.sigma * std::sqrt(G) * nd(rng);
        }
        }
        return 0.0;
    }
};

} // namespace

McResult mc_price(const OptionContract& c, const LevyModel& m, const OracleConfig& cfg) {
    c.validate();
    cfg.validate();
    const long chunk = 4096;
    const long chunks = (cfg.mc_paths + chunk - 1) / chunk;
    std::vector<double> sum(static_cast<size_t>(chunks)), sum2(static_cast<size_t>(chunks));
    const double dt = c.dt();
    const double drift = m.drift() * dt;
    const double lx = c.has_lower() ? c.l() : -std::numeric_limits<double>::infinity();
    const double ux = c.has_upper() ? std::log(c.U / c.S0) : std::numeric_limits<double>::infinity();
    Sampler draw{m, dt};

#pragma omp parallel for schedule(dynamic, 1) if (cfg.exec == Exec::Parallel)
    for (long ch = 0; ch < chunks; ++ch) {
        // each chunk owns a substream derived from (seed, chunk index)
        std::seed_seq seq{static_cast<std::uint32_t>(cfg.mc_seed), static_cast<std::uint32_t>(cfg.mc_seed >> 32),
                          static_cast<std::uint32_t>(ch), static_cast<std::uint32_t>(ch >> 32), 0x5bd1e995u};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> nd(0.0, 1.0);
        long first = ch * chunk, last = std::min(cfg.mc_paths, first + chunk);
        double s = 0.0, s2 = 0.0;
        for (long path = first; path < last; ++path) {
            double x = 0.0;
            bool alive = true;
            for (int d = 0; d < c.N && alive; ++d) {
                x += drift + draw(rng, nd);
                alive = x > lx && x < ux;
            }
            double pay = 0.0;
            if (alive) {
                double S = c.S0 * std::exp(x);
                pay = c.type == OptionType::Call ? std::max(S - c.K, 0.0) : std::max(c.K - S, 0.0);
            }
            s += pay;
            s2 += pay * pay;
        }
        sum[ch] = s;
        sum2[ch] = s2;
    }
    double s = 0.0, s2 = 0.0;
    for (long ch = 0; ch < chunks; ++ch) {
        s += sum[ch];
        s2 += sum2[ch];
    }
    const double n = static_cast<double>(cfg.mc_paths);
    double mean = s / n;
    double var = std::max(0.0, s2 / n - mean * mean) * n / (n - 1.0);
    double disc = std::exp(-c.r * c.T);
    return {disc * mean, disc * std::sqrt(var / n), cfg.mc_paths};
}

} // namespace sbar
