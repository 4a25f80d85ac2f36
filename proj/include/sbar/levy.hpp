#pragma once

#include "sbar/errors.hpp"

#include <string>

namespace sbar {

enum class ModelKind { Kou, NIG, VG, Gaussian };

struct KouParams {
    double p = 0.3;
    double lambda = 3.0;
    double sigma = 0.1;
    double eta1 = 40.0;
    double eta2 = 12.0;
};

struct NigParams {
    double alpha = 15.0;
    double beta = -5.0;
    double delta = 0.5;
};

struct VgParams {
    double theta = 1.0 / 9.0;
    double sigma = 0.19245008972987526; // 1/(3 sqrt 3)
    double nu = 0.25;
};

struct GaussianParams {
    double sigma = 0.2;
};

// open interval of Im(xi) where Psi(xi) is finite
struct Strip {
    double lo;
    double hi;
    bool contains(double im) const { return im > lo && im < hi; }
};

enum class Decay { Exponential, Polynomial };

struct DecayClass {
    Decay cls = Decay::Exponential;
    double polynomial_exponent = 0.0;
};

class LevyModel {
public:
    static LevyModel kou(const KouParams& p, double r, double q_div);
    static LevyModel nig(const NigParams& p, double r, double q_div);
    static LevyModel vg(const VgParams& p, double r, double q_div);
    static LevyModel gaussian(const GaussianParams& p, double r, double q_div);

    ModelKind kind() const { return kind_; }
    double rate() const { return r_; }
    double dividend() const { return q_div_; }
    double drift() const { return drift_; }
    Strip strip() const { return strip_; }

    const KouParams& kou_params() const { return kou_; }
    const NigParams& nig_params() const { return nig_; }
    const VgParams& vg_params() const { return vg_; }
    const GaussianParams& gaussian_params() const { return gauss_; }

    // psi(xi) including the risk-neutral drift, Psi(xi,t) = exp(psi t)
    cplx exponent(cplx xi) const;
    // no strip check, for hot loops over real grids
    cplx exponent_unchecked(cplx xi) const { return cplx(0.0, drift_) * xi + raw_exponent(xi); }

    // Var X_1
    double variance_rate() const;

    // "kou(p=0.3,lambda=3,...)" with %.17g values; used as a cache key
    std::string describe() const;

private:
    LevyModel() = default;
    cplx raw_exponent(cplx xi) const;
    void finish();

    ModelKind kind_ = ModelKind::Gaussian;
    KouParams kou_{};
    NigParams nig_{};
    VgParams vg_{};
    GaussianParams gauss_{};
    double r_ = 0.0;
    double q_div_ = 0.0;
    double drift_ = 0.0;
    Strip strip_{-1e300, 1e300};
};

cplx char_function(const LevyModel& m, cplx xi, double t);
DecayClass decay_class(const LevyModel& m, double dt);

const char* model_name(ModelKind k);

} // namespace sbar
