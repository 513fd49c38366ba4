// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

// Shared spectral-sum kernels for the transform engine and frame operators:
// per-scale wavelet tables, phase-recurrence point sums, and the aligned-b
// detection used by the per-scale FFT fast path.

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "wsr/signal.hpp"
#include "wsr/wavelet.hpp"

namespace wsr::detail {

/// w_hat(a xi_k) over all spectrum slots k (unconjugated).
inline std::vector<cplx> wavelet_table(const WaveletSpec& w,
                                       const SampleGrid& grid, double a) {
    std::vector<cplx> tab(grid.n);
    for (std::size_t k = 0; k < grid.n; ++k) {
        tab[k] = fourier_eval(w, a * grid.xi(k));
    }
    return tab;
}

inline void conjugate_in_place(std::vector<cplx>& tab) {
    for (cplx& v : tab) v = std::conj(v);
}

/// sum_k data_k exp(sign 2 pi i b xi_k), evaluated with a unit-phase
/// recurrence that is restarted from std::polar every 64 slots to stop
/// rounding drift.
inline cplx phased_sum(const std::vector<cplx>& data, const SampleGrid& grid,
                       double b, int sign) {
    const std::size_t n = grid.n;
    const double step = sign * 2.0 * std::numbers::pi * b * grid.dxi();
    const cplx ratio = std::polar(1.0, step);
    cplx acc(0.0, 0.0);
    cplx phase(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        if (k % 64 == 0) {
            phase = std::polar(1.0, sign * 2.0 * std::numbers::pi * b * grid.xi(k));
        }
        acc += data[k] * phase;
        phase *= ratio;
    }
    return acc;
}

/// acc_k += weight * tab_k * exp(sign 2 pi i b xi_k), same recurrence.
inline void phased_accumulate(std::vector<cplx>& acc,
                              const std::vector<cplx>& tab,
                              const SampleGrid& grid, double b, cplx weight,
                              int sign) {
    const std::size_t n = grid.n;
    const double step = sign * 2.0 * std::numbers::pi * b * grid.dxi();
    const cplx ratio = std::polar(1.0, step);
    cplx phase(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        if (k % 64 == 0) {
            phase = std::polar(1.0, sign * 2.0 * std::numbers::pi * b * grid.xi(k));
        }
        acc[k] += weight * tab[k] * phase;
        phase *= ratio;
    }
}

/// True when b sits on the periodized sample grid; writes the wrapped
/// sample index.  Tolerance 1e-9 on the fractional index.
inline bool grid_aligned(const SampleGrid& grid, double b, std::size_t* j_out) {
    const double j = (b - grid.x0) / grid.dx;
    const double r = std::round(j);
    if (std::abs(j - r) > 1e-9) return false;
    const long n = static_cast<long>(grid.n);
    const long wrapped = ((static_cast<long>(r) % n) + n) % n;
    *j_out = static_cast<std::size_t>(wrapped);
    return true;
}

}  // namespace wsr::detail
