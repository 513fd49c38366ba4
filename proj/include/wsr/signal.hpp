// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace wsr {

using cplx = std::complex<double>;

/// Uniform sample grid: positions x_j = x0 + j*dx, j = 0..n-1.
/// n is a power of two >= 2 so the Fourier pair stays exact.
struct SampleGrid {
    std::size_t n = 0;
    double dx = 0.0;
    double x0 = 0.0;

    double x(std::size_t j) const { return x0 + static_cast<double>(j) * dx; }
    double span() const { return static_cast<double>(n) * dx; }
    /// Frequency spacing of the matching spectrum, 1/(n*dx).
    double dxi() const { return 1.0 / (static_cast<double>(n) * dx); }
    /// Frequency of spectral slot i (slots run from -n/2 to n/2-1).
    double xi(std::size_t i) const {
        return (static_cast<double>(i) - static_cast<double>(n) / 2.0) * dxi();
    }
    /// Slot index of the zero-frequency bin.
    std::size_t zero_bin() const { return n / 2; }

    bool operator==(const SampleGrid&) const = default;
};

/// Throws std::invalid_argument unless n is a power of two >= 2 and dx > 0.
void validate_grid(const SampleGrid& grid);

/// Complex sample vector on a uniform grid. A signal constructed as real
/// keeps the flag; generic complex data may opt in when its imaginary
/// part is below 1e-12 of its largest entry.
class Signal {
  public:
    Signal(SampleGrid grid, std::vector<cplx> samples, bool real_valued);

    static Signal from_real(SampleGrid grid, const std::vector<double>& samples);
    static Signal from_complex(SampleGrid grid, std::vector<cplx> samples);
    static Signal zero(SampleGrid grid, bool real_valued = true);

    const SampleGrid& grid() const { return grid_; }
    const std::vector<cplx>& samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    bool is_real() const { return real_; }

    /// Largest |Im| over the samples relative to the largest |value|.
    double imag_dirt() const;

  private:
    SampleGrid grid_;
    std::vector<cplx> samples_;
    bool real_;
};

/// Discrete Fourier coefficients of a Signal, stored in increasing
/// frequency order: coefficient i sits at xi = (i - n/2)/(n*dx).
/// Matches f_hat(xi) = integral f(x) exp(-2 pi i x xi) dx on the grid.
class Spectrum {
  public:
    Spectrum(SampleGrid grid, std::vector<cplx> coefficients);

    const SampleGrid& grid() const { return grid_; }
    const std::vector<cplx>& coefficients() const { return coeff_; }
    std::size_t size() const { return coeff_.size(); }
    double dxi() const { return grid_.dxi(); }
    double xi(std::size_t i) const { return grid_.xi(i); }

  private:
    SampleGrid grid_;
    std::vector<cplx> coeff_;
};

Spectrum dft(const Signal& signal);
Signal idft(const Spectrum& spectrum);

/// Fourier multiplier -i sgn(xi); the xi=0 and unpaired Nyquist bins are
/// zeroed (sgn(0) = 0 convention). Maps real signals to real signals.
Signal hilbert(const Signal& signal);

/// f_plus with spectrum 2*f_hat on xi > 0 and exact zeros elsewhere.
/// Defined for real signals only; throws std::domain_error otherwise.
Signal analytic_representation(const Signal& signal);

// L2 norms and inner products with the grid measures attached
// (dx for samples, dxi for coefficients).
double norm_l2(const Signal& f);
double norm_l2(const Spectrum& f);
cplx inner(const Signal& f, const Signal& g);

}  // namespace wsr
