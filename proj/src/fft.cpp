#include "sbar/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace sbar::fft {

namespace {

struct PlanCache {
    std::mutex mu;
    std::map<std::pair<int, int>, fftw_plan> plans;

    ~PlanCache() {
        for (auto& kv : plans) fftw_destroy_plan(kv.second);
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

fftw_plan plan_for(int n, int sign) {
    auto& c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    auto key = std::make_pair(n, sign);
    auto it = c.plans.find(key);
    if (it != c.plans.end()) return it->second;
    // planning is not thread safe in FFTW; the scratch buffer only fixes the in-place layout
    std::vector<cplx> scratch(static_cast<size_t>(n));
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(n, p, p, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw NumericalFailure("fft: could not create plan");
    c.plans.emplace(key, plan);
    return plan;
}

} // namespace

void transform(cplx* data, int n, int sign) {
    if (n <= 0) throw InvalidArgument("fft: length must be positive");
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan_for(n, sign), p, p);
}

} // namespace sbar::fft
