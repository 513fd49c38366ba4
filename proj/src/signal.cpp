// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

#include "wsr/signal.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace wsr {

namespace {

constexpr double kRealDirtTol = 1e-12;

bool is_pow2(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

// One cached in-place FFTW plan pair per transform size.  All FFTW entry
// points are serialized; planning is not thread safe.
struct PlanSet {
    fftw_complex* buf = nullptr;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    explicit PlanSet(std::size_t n) {
        buf = fftw_alloc_complex(n);
        if (buf == nullptr) throw std::bad_alloc();
        forward = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD,
                                   FFTW_ESTIMATE);
        backward = fftw_plan_dft_1d(static_cast<int>(n), buf, buf,
                                    FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~PlanSet() {
        if (forward != nullptr) fftw_destroy_plan(forward);
        if (backward != nullptr) fftw_destroy_plan(backward);
        if (buf != nullptr) fftw_free(buf);
    }
    PlanSet(const PlanSet&) = delete;
    PlanSet& operator=(const PlanSet&) = delete;
};

std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

PlanSet& plans_for(std::size_t n) {
    static std::map<std::size_t, std::unique_ptr<PlanSet>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, std::make_unique<PlanSet>(n)).first;
    }
    return *it->second;
}

// Raw length-n DFT sum out[k] = sum_j in[j] exp(-2 pi i j k sign / n),
// sign = +1 selects the FFTW_FORWARD kernel.
std::vector<cplx> fft_raw(const std::vector<cplx>& in, bool forward) {
    const std::size_t n = in.size();
    std::lock_guard<std::mutex> lock(fftw_mutex());
    PlanSet& ps = plans_for(n);
    for (std::size_t j = 0; j < n; ++j) {
        ps.buf[j][0] = in[j].real();
        ps.buf[j][1] = in[j].imag();
    }
    fftw_execute(forward ? ps.forward : ps.backward);
    std::vector<cplx> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = cplx(ps.buf[j][0], ps.buf[j][1]);
    }
    return out;
}

}  // namespace

void validate_grid(const SampleGrid& grid) {
    if (!is_pow2(grid.n)) {
        throw std::invalid_argument("grid length must be a power of two >= 2, got " +
                                    std::to_string(grid.n));
    }
    if (!(grid.dx > 0.0) || !std::isfinite(grid.dx)) {
        throw std::invalid_argument("grid spacing must be positive and finite");
    }
    if (!std::isfinite(grid.x0)) {
        throw std::invalid_argument("grid origin must be finite");
    }
}

Signal::Signal(SampleGrid grid, std::vector<cplx> samples, bool real_valued)
    : grid_(grid), samples_(std::move(samples)), real_(real_valued) {
    validate_grid(grid_);
    if (samples_.size() != grid_.n) {
        throw std::invalid_argument("sample count does not match grid length");
    }
    for (const cplx& v : samples_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::invalid_argument("signal samples must be finite");
        }
    }
    if (real_) {
        if (imag_dirt() > kRealDirtTol) {
            throw std::invalid_argument(
                "signal flagged real but imaginary part exceeds 1e-12 of peak");
        }
        for (cplx& v : samples_) v = cplx(v.real(), 0.0);
    }
}

Signal Signal::from_real(SampleGrid grid, const std::vector<double>& samples) {
    std::vector<cplx> c(samples.size());
    for (std::size_t j = 0; j < samples.size(); ++j) c[j] = cplx(samples[j], 0.0);
    return Signal(grid, std::move(c), true);
}

Signal Signal::from_complex(SampleGrid grid, std::vector<cplx> samples) {
    Signal probe(grid, std::move(samples), false);
    if (probe.imag_dirt() <= kRealDirtTol) {
        return Signal(probe.grid_, std::move(probe.samples_), true);
    }
    return probe;
}

Signal Signal::zero(SampleGrid grid, bool real_valued) {
    return Signal(grid, std::vector<cplx>(grid.n, cplx(0.0, 0.0)), real_valued);
}

double Signal::imag_dirt() const {
    double peak = 0.0;
    double worst = 0.0;
    for (const cplx& v : samples_) {
        peak = std::max(peak, std::abs(v));
        worst = std::max(worst, std::abs(v.imag()));
    }
    if (peak == 0.0) return 0.0;
    return worst / peak;
}

Spectrum::Spectrum(SampleGrid grid, std::vector<cplx> coefficients)
    : grid_(grid), coeff_(std::move(coefficients)) {
    validate_grid(grid_);
    if (coeff_.size() != grid_.n) {
        throw std::invalid_argument("coefficient count does not match grid length");
    }
}

Spectrum dft(const Signal& signal) {
    const SampleGrid& g = signal.grid();
    const std::size_t n = g.n;
    std::vector<cplx> raw = fft_raw(signal.samples(), /*forward=*/true);
    // f_hat(m dxi) = dx exp(-2 pi i x0 m dxi) sum_j f_j exp(-2 pi i j m / n)
    std::vector<cplx> coeff(n);
    const double half = static_cast<double>(n) / 2.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double m = static_cast<double>(i) - half;
        const std::size_t k =
            static_cast<std::size_t>((static_cast<long>(m) % static_cast<long>(n) +
                                      static_cast<long>(n)) %
                                     static_cast<long>(n));
        const double phase = -2.0 * std::numbers::pi * g.x0 * m * g.dxi();
        coeff[i] = raw[k] * g.dx * std::polar(1.0, phase);
    }
    return Spectrum(g, std::move(coeff));
}

Signal idft(const Spectrum& spectrum) {
    const SampleGrid& g = spectrum.grid();
    const std::size_t n = g.n;
    const double half = static_cast<double>(n) / 2.0;
    // f_j = dxi sum_m f_hat(m dxi) exp(2 pi i x0 m dxi) exp(2 pi i j m / n)
    std::vector<cplx> pre(n, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        const double m = static_cast<double>(i) - half;
        const std::size_t k =
            static_cast<std::size_t>((static_cast<long>(m) % static_cast<long>(n) +
                                      static_cast<long>(n)) %
                                     static_cast<long>(n));
        const double phase = 2.0 * std::numbers::pi * g.x0 * m * g.dxi();
        pre[k] = spectrum.coefficients()[i] * std::polar(1.0, phase);
    }
    std::vector<cplx> raw = fft_raw(pre, /*forward=*/false);
    for (cplx& v : raw) v *= g.dxi();
    return Signal::from_complex(g, std::move(raw));
}

Signal hilbert(const Signal& signal) {
    Spectrum spec = dft(signal);
    const std::size_t n = spec.size();
    std::vector<cplx> coeff = spec.coefficients();
    const std::size_t zero = spec.grid().zero_bin();
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0 || i == zero) {
            // sgn(0) = 0, and the unpaired Nyquist slot carries no sign.
            coeff[i] = cplx(0.0, 0.0);
        } else if (i > zero) {
            coeff[i] *= cplx(0.0, -1.0);
        } else {
            coeff[i] *= cplx(0.0, 1.0);
        }
    }
    return idft(Spectrum(spec.grid(), std::move(coeff)));
}

Signal analytic_representation(const Signal& signal) {
    if (!signal.is_real()) {
        throw std::domain_error(
            "analytic representation is defined for real signals only");
    }
    Spectrum spec = dft(signal);
    const std::size_t n = spec.size();
    const std::size_t zero = spec.grid().zero_bin();
    std::vector<cplx> coeff(n, cplx(0.0, 0.0));
    for (std::size_t i = zero + 1; i < n; ++i) {
        coeff[i] = 2.0 * spec.coefficients()[i];
    }
    Signal out = idft(Spectrum(spec.grid(), std::move(coeff)));
    return Signal(out.grid(), out.samples(), /*real_valued=*/false);
}

double norm_l2(const Signal& f) {
    double acc = 0.0;
    for (const cplx& v : f.samples()) acc += std::norm(v);
    return std::sqrt(acc * f.grid().dx);
}

double norm_l2(const Spectrum& f) {
    double acc = 0.0;
    for (const cplx& v : f.coefficients()) acc += std::norm(v);
    return std::sqrt(acc * f.dxi());
}

cplx inner(const Signal& f, const Signal& g) {
    if (!(f.grid() == g.grid())) {
        throw std::invalid_argument("inner product requires matching grids");
    }
    cplx acc(0.0, 0.0);
    const auto& a = f.samples();
    const auto& b = g.samples();
    for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * std::conj(b[j]);
    return acc * f.grid().dx;
}

}  // namespace wsr
