#include "sbar/hilbert.hpp"

#include "sbar/fft.hpp"

#include <cstring>
#include <map>
#include <mutex>
#include <numbers>

namespace sbar {

namespace {

const cplx kI(0.0, 1.0);

std::vector<cplx>& scratch(int slot, size_t n) {
    thread_local std::vector<cplx> bufs[3];
    auto& b = bufs[slot];
    if (b.size() < n) b.resize(n);
    return b;
}

} // namespace

double HilbertKernel::lag_value(long m) {
    if (m % 2 == 0) return 0.0;
    return 2.0 / (std::numbers::pi * static_cast<double>(m));
}

HilbertKernel::HilbertKernel(const GridSpec& grid) : grid_(grid) {
    const int M = grid.M;
    const int L = 2 * M;
    kfft_.assign(static_cast<size_t>(L), cplx(0.0));
    for (long m = -(M - 1); m <= M - 1; ++m) kfft_[static_cast<size_t>(m + M - 1)] = lag_value(m);
    fft::transform(kfft_.data(), L, -1);
    // fold the 1/L of the inverse transform into the kernel
    for (auto& v : kfft_) v /= static_cast<double>(L);
}

void HilbertKernel::apply(const cplx* f, cplx* out) const {
    const int M = grid_.M;
    const int L = 2 * M;
    auto& w = scratch(0, static_cast<size_t>(L));
    std::memcpy(static_cast<void*>(w.data()), f, sizeof(cplx) * M);
    std::fill(w.begin() + M, w.begin() + L, cplx(0.0));
    fft::transform(w.data(), L, -1);
    for (int i = 0; i < L; ++i) w[i] *= kfft_[i];
    fft::transform(w.data(), L, +1);
    // linear convolution: g_j = sum_k f_k K(j-k) sits at offset j + M - 1
    std::memcpy(static_cast<void*>(out), w.data() + (M - 1), sizeof(cplx) * M);
}

std::shared_ptr<const HilbertKernel> kernel_for(const GridSpec& grid) {
    static std::mutex mu;
    static std::map<std::pair<int, double>, std::shared_ptr<const HilbertKernel>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(grid.M, grid.x_max);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    if (cache.size() > 64) cache.clear();
    auto k = std::make_shared<const HilbertKernel>(grid);
    cache.emplace(key, k);
    return k;
}

std::vector<cplx> phase_vector(const GridSpec& grid, double b) {
    std::vector<cplx> p(static_cast<size_t>(grid.M));
    for (int i = 0; i < grid.M; ++i) p[i] = std::polar(1.0, b * grid.xi_at(i));
    return p;
}

void plemelj_plus(const HilbertKernel& kernel, const cplx* f, cplx* out) {
    const int M = kernel.grid().M;
    auto& h = scratch(1, static_cast<size_t>(M));
    kernel.apply(f, h.data());
    for (int i = 0; i < M; ++i) out[i] = 0.5 * (f[i] + kI * h[i]);
}

void plemelj_shifted(const HilbertKernel& kernel, const cplx* f, double b, Side side, cplx* out) {
    const GridSpec& g = kernel.grid();
    const int M = g.M;
    if (b == 0.0) {
        auto& h = scratch(1, static_cast<size_t>(M));
        kernel.apply(f, h.data());
        double s = side == Side::Above ? 1.0 : -1.0;
        for (int i = 0; i < M; ++i) out[i] = 0.5 * (f[i] + s * kI * h[i]);
        return;
    }
    auto& h = scratch(1, static_cast<size_t>(M));
    for (int i = 0; i < M; ++i) h[i] = std::polar(1.0, -b * g.xi_at(i)) * f[i];
    kernel.apply(h.data(), h.data());
    double s = side == Side::Above ? 1.0 : -1.0;
    for (int i = 0; i < M; ++i) out[i] = 0.5 * (f[i] + s * kI * std::polar(1.0, b * g.xi_at(i)) * h[i]);
}

void window_raw(const HilbertKernel& kernel, const cplx* f, double l, double u, cplx* out) {
    const GridSpec& g = kernel.grid();
    const int M = g.M;
    auto& hl = scratch(1, static_cast<size_t>(M));
    auto& hu = scratch(2, static_cast<size_t>(M));
    for (int i = 0; i < M; ++i) {
        double xi = g.xi_at(i);
        hl[i] = std::polar(1.0, -l * xi) * f[i];
        hu[i] = std::polar(1.0, -u * xi) * f[i];
    }
    kernel.apply(hl.data(), hl.data());
    kernel.apply(hu.data(), hu.data());
    for (int i = 0; i < M; ++i) {
        double xi = g.xi_at(i);
        out[i] = 0.5 * kI * (std::polar(1.0, l * xi) * hl[i] - std::polar(1.0, u * xi) * hu[i]);
    }
}

SampledSpectrum discrete_hilbert(const SampledSpectrum& f, const HilbertKernel& kernel) {
    require_same_grid(f.grid, kernel.grid(), "discrete_hilbert");
    SampledSpectrum out(f.grid);
    kernel.apply(f.values.data(), out.values.data());
    return out;
}

PlemeljPair plemelj_decompose(const SampledSpectrum& f, const HilbertKernel& kernel) {
    require_same_grid(f.grid, kernel.grid(), "plemelj_decompose");
    PlemeljPair r{SampledSpectrum(f.grid), SampledSpectrum(f.grid)};
    plemelj_plus(kernel, f.values.data(), r.plus.values.data());
    for (int i = 0; i < f.grid.M; ++i) r.minus.values[i] = f.values[i] - r.plus.values[i];
    return r;
}

SampledSpectrum plemelj_decompose_shifted(const SampledSpectrum& f, double b, Side side, const HilbertKernel& kernel) {
    require_same_grid(f.grid, kernel.grid(), "plemelj_decompose_shifted");
    if (!std::isfinite(b)) throw InvalidArgument("plemelj_decompose_shifted: barrier must be finite");
    SampledSpectrum out(f.grid);
    plemelj_shifted(kernel, f.values.data(), b, side, out.values.data());
    return out;
}

SampledSpectrum window_between_barriers(const SampledSpectrum& f, double l, double u, const HilbertKernel& kernel) {
    require_same_grid(f.grid, kernel.grid(), "window_between_barriers");
    if (!(l < u)) throw InvalidArgument("window_between_barriers: need l < u");
    SampledSpectrum out(f.grid);
    window_raw(kernel, f.values.data(), l, u, out.values.data());
    return out;
}

} // namespace sbar
