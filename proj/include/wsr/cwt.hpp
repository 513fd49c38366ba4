// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

#pragma once

#include <cstddef>
#include <vector>

#include "wsr/lattice.hpp"
#include "wsr/signal.hpp"
#include "wsr/wavelet.hpp"

namespace wsr {

/// Wavelet coefficients W_w f(b,a) for one or more wavelets, aligned to
/// the points of a hyperbolic lattice: coeffs[i][j] belongs to
/// wavelets[i] at lattice.points()[j].
struct CoefficientGrid {
    HyperbolicLattice lattice;
    std::vector<WaveletSpec> wavelets;
    std::vector<std::vector<cplx>> coeffs;
};

/// W_w f(b,a) = sqrt(a) sum_k f_hat(xi_k) conj(w_hat(a xi_k))
///              exp(2 pi i b xi_k) dxi.
/// Throws std::domain_error on a <= 0 or non-finite b.
cplx cwt_point(const Spectrum& spec, const WaveletSpec& w, double b, double a);

/// cwt_point over every (wavelet, lattice point) pair, with per-scale
/// wavelet tables and an FFT fast path when a scale's b-values all sit
/// on the sample grid.  Throws std::domain_error on an empty wavelet list.
CoefficientGrid cwt_lattice(const Spectrum& spec,
                            const std::vector<WaveletSpec>& wavelets,
                            const HyperbolicLattice& lattice);

/// One density comparison d vs threshold.  Strict gates (frame, Bergman
/// sampling) require d < threshold; the sign-retrieval gate allows
/// equality.  |d - threshold| <= 1e-12 * threshold counts as exactly on
/// the boundary, where strict gates fail and the non-strict gate holds.
struct DensityGate {
    double threshold = 0.0;
    double slack = 0.0;  // threshold - d; positive means inside
    bool boundary = false;
    bool satisfied = false;
};

struct BergmanGate {
    double w = 0.0;
    DensityGate gate;
};

/// Outcome of the lattice-density predicates at d = beta ln(alpha):
/// Poisson pair frame iff d < 2 pi / p; sign-retrieval uniqueness iff
/// d <= 4 pi / (1 + 4p); sampling for the Bergman space of weight w iff
/// d < 4 pi / (w - 1).
struct DensityReport {
    double beta = 0.0;
    double alpha = 0.0;
    double p = 0.0;
    double d = 0.0;
    DensityGate poisson_pair_frame;
    DensityGate sign_retrieval_unique;
    std::vector<BergmanGate> bergman_sampling;
};

DensityReport density_report(double beta, double alpha, double p,
                             const std::vector<double>& bergman_weights = {});

/// Lattice values of the Bergman-domain function
/// F(b + ia) = a^{-(1/2+p)} W_{psi_p} f(b,a).
struct BergmanField {
    HyperbolicLattice lattice;
    double p = 0.0;
    std::vector<cplx> values;
};

/// Requires grid to hold exactly one wavelet, Cauchy of order p.
BergmanField bergman_lift(const CoefficientGrid& grid, double p);

/// Riemann sum of |W_w f|^2 db da/a^2 over one b-period times a log-
/// uniform scale window [a_min, a_max] with n_scales midpoints.  The
/// b-sum runs over the sample grid, which integrates the periodic
/// integrand exactly for band-limited spectra.
double halfplane_energy(const Spectrum& spec, const WaveletSpec& w,
                        double a_min, double a_max, std::size_t n_scales);

}  // namespace wsr
