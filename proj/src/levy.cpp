#include "sbar/levy.hpp"

#include <cmath>
#include <cstdio>

namespace sbar {

namespace {

const cplx kI(0.0, 1.0);

std::string fmt_param(const char* name, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s=%.17g", name, v);
    return buf;
}

void require(bool ok, const char* what) {
    if (!ok) throw InvalidArgument(std::string("levy: ") + what);
}

} // namespace

LevyModel LevyModel::kou(const KouParams& p, double r, double q_div) {
    require(p.p > 0.0 && p.p < 1.0, "kou.p must lie in (0,1)");
    require(p.lambda > 0.0, "kou.lambda must be positive");
    require(p.sigma > 0.0, "kou.sigma must be positive");
    require(p.eta1 > 1.0, "kou.eta1 must exceed 1");
    require(p.eta2 > 0.0, "kou.eta2 must be positive");
    LevyModel m;
    m.kind_ = ModelKind::Kou;
    m.kou_ = p;
    m.r_ = r;
    m.q_div_ = q_div;
    // poles at xi = -i eta1 and xi = +i eta2
    m.strip_ = {-p.eta1, p.eta2};
    m.finish();
    return m;
}

LevyModel LevyModel::nig(const NigParams& p, double r, double q_div) {
    require(p.alpha > 0.0, "nig.alpha must be positive");
    require(std::abs(p.beta) < p.alpha, "nig.beta must satisfy |beta| < alpha");
    require(p.delta > 0.0, "nig.delta must be positive");
    // the martingale point xi=-i needs |beta+1| < alpha
    require(std::abs(p.beta + 1.0) < p.alpha, "nig: |beta+1| < alpha needed for a finite forward");
    LevyModel m;
    m.kind_ = ModelKind::NIG;
    m.nig_ = p;
    m.r_ = r;
    m.q_div_ = q_div;
    // branch points where alpha^2 = (beta + i xi)^2
    m.strip_ = {p.beta - p.alpha, p.beta + p.alpha};
    m.finish();
    return m;
}

LevyModel LevyModel::vg(const VgParams& p, double r, double q_div) {
    require(p.sigma > 0.0, "vg.sigma must be positive");
    require(p.nu > 0.0, "vg.nu must be positive");
    LevyModel m;
    m.kind_ = ModelKind::VG;
    m.vg_ = p;
    m.r_ = r;
    m.q_div_ = q_div;
    // zeros of 1 + theta nu b - sigma^2 nu b^2 / 2 at xi = i b
    double a = 0.5 * p.sigma * p.sigma * p.nu;
    double b = p.theta * p.nu;
    double disc = std::sqrt(b * b + 4.0 * a);
    m.strip_ = {(b - disc) / (2.0 * a), (b + disc) / (2.0 * a)};
    require(m.strip_.contains(-1.0), "vg: parameters give an infinite forward");
    m.finish();
    return m;
}

LevyModel LevyModel::gaussian(const GaussianParams& p, double r, double q_div) {
    require(p.sigma > 0.0, "gaussian.sigma must be positive");
    LevyModel m;
    m.kind_ = ModelKind::Gaussian;
    m.gauss_ = p;
    m.r_ = r;
    m.q_div_ = q_div;
    m.finish();
    return m;
}

void LevyModel::finish() {
    // psi(-i) = r - q fixes the drift
    drift_ = (r_ - q_div_) - raw_exponent(cplx(0.0, -1.0)).real();
}

cplx LevyModel::raw_exponent(cplx xi) const {
    switch (kind_) {
    case ModelKind::Kou: {
        const auto& k = kou_;
        cplx jumps = k.p * k.eta1 / (k.eta1 - kI * xi) + (1.0 - k.p) * k.eta2 / (k.eta2 + kI * xi) - 1.0;
        return -0.5 * k.sigma * k.sigma * xi * xi + k.lambda * jumps;
    }
    case ModelKind::NIG: {
        const auto& n = nig_;
        cplx bx = n.beta + kI * xi;
        double gamma = std::sqrt(n.alpha * n.alpha - n.beta * n.beta);
        return -n.delta * (std::sqrt(n.alpha * n.alpha - bx * bx) - gamma);
    }
    case ModelKind::VG: {
        const auto& v = vg_;
        return -std::log(1.0 - kI * v.theta * v.nu * xi + 0.5 * v.sigma * v.sigma * v.nu * xi * xi) / v.nu;
    }
    case ModelKind::Gaussian:
        return -0.5 * gauss_.sigma * gauss_.sigma * xi * xi;
    }
    return 0.0;
}

cplx LevyModel::exponent(cplx xi) const {
    if (!strip_.contains(xi.imag()))
        throw DomainError("levy: Im(xi) outside the strip of regularity");
    return exponent_unchecked(xi);
}

double LevyModel::variance_rate() const {
    switch (kind_) {
    case ModelKind::Kou: {
        const auto& k = kou_;
        return k.sigma * k.sigma + k.lambda * (2.0 * k.p / (k.eta1 * k.eta1) + 2.0 * (1.0 - k.p) / (k.eta2 * k.eta2));
    }
    case ModelKind::NIG: {
        const auto& n = nig_;
        double g = std::sqrt(n.alpha * n.alpha - n.beta * n.beta);
        return n.delta * n.alpha * n.alpha / (g * g * g);
    }
    case ModelKind::VG:
        return vg_.sigma * vg_.sigma + vg_.nu * vg_.theta * vg_.theta;
    case ModelKind::Gaussian:
        return gauss_.sigma * gauss_.sigma;
    }
    return 0.0;
}

std::string LevyModel::describe() const {
    std::string s = model_name(kind_);
    s += "(";
    switch (kind_) {
    case ModelKind::Kou:
        s += fmt_param("p", kou_.p) + "," + fmt_param("lambda", kou_.lambda) + "," + fmt_param("sigma", kou_.sigma) +
             "," + fmt_param("eta1", kou_.eta1) + "," + fmt_param("eta2", kou_.eta2);
        break;
    case ModelKind::NIG:
        s += fmt_param("alpha", nig_.alpha) + "," + fmt_param("beta", nig_.beta) + "," + fmt_param("delta", nig_.delta);
        break;
    case ModelKind::VG:
        s += fmt_param("theta", vg_.theta) + "," + fmt_param("sigma", vg_.sigma) + "," + fmt_param("nu", vg_.nu);
        break;
    case ModelKind::Gaussian:
        s += fmt_param("sigma", gauss_.sigma);
        break;
    }
    s += "," + fmt_param("r", r_) + "," + fmt_param("q", q_div_) + ")";
    return s;
}

cplx char_function(const LevyModel& m, cplx xi, double t) {
    if (t < 0.0) throw DomainError("levy: negative horizon");
    return std::exp(m.exponent(xi) * t);
}

DecayClass decay_class(const LevyModel& m, double dt) {
    if (!(dt > 0.0)) throw InvalidArgument("levy: decay_class needs dt > 0");
    if (m.kind() == ModelKind::VG) return {Decay::Polynomial, 2.0 * dt / m.vg_params().nu};
    return {Decay::Exponential, 0.0};
}

const char* model_name(ModelKind k) {
    switch (k) {
    case ModelKind::Kou: return "kou";
    case ModelKind::NIG: return "nig";
    case ModelKind::VG: return "vg";
    case ModelKind::Gaussian: return "gaussian";
    }
    return "?";
}

} // namespace sbar
