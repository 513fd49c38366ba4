// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsr/cwt.hpp"
#include "wsr/lattice.hpp"
#include "wsr/signal.hpp"
#include "wsr/wavelet.hpp"

namespace wsr {

/// Run of lattice points sharing one scale, with the cached per-wavelet
/// spectral tables the operators evaluate against.  Engine plumbing.
struct ScaleBlock {
    std::size_t lo = 0;
    std::size_t hi = 0;  // point index range [lo, hi)
    double a = 1.0;
    double root_a = 1.0;
    bool aligned = false;                 // every b sits on the sample grid
    std::vector<std::size_t> row_index;   // wrapped sample index per point
    std::vector<std::vector<cplx>> tab;   // per wavelet: w_hat(a xi_k)
    std::vector<std::vector<cplx>> tab_conj;
};

/// Multi-wavelet frame {T_b D_a w_i : (b,a) in lattice} over a fixed
/// signal geometry.  Wavelets must be real valued in the time domain
/// (Poisson / HilbertPoisson / Combo).
class FrameSystem {
  public:
    FrameSystem(std::vector<WaveletSpec> wavelets, HyperbolicLattice lattice,
                SampleGrid geometry);

    const std::vector<WaveletSpec>& wavelets() const { return wavelets_; }
    const HyperbolicLattice& lattice() const { return lattice_; }
    const SampleGrid& geometry() const { return geometry_; }
    const std::vector<ScaleBlock>& scale_blocks() const { return blocks_; }

    std::size_t wavelet_count() const { return wavelets_.size(); }
    std::size_t point_count() const { return lattice_.size(); }
    /// Length of a coefficient vector: wavelet_count * point_count,
    /// ordered wavelet-major, lattice order within each wavelet.
    std::size_t coeff_count() const { return wavelets_.size() * lattice_.size(); }

    /// Shift-invariant estimate of the frame operator per frequency bin,
    /// sum_{i,m} min(1, N_m db/span) |w_i_hat(a xi)|^2 / beta, floored at
    /// 1e-3 of its peak.  Used as a Jacobi preconditioner: the truncated
    /// lattice leaves coarse scales thin, which drags the bottom of the
    /// spectrum of S far below the top and stalls plain CG.
    const std::vector<double>& fourier_diagonal() const { return precond_; }

  private:
    std::vector<WaveletSpec> wavelets_;
    HyperbolicLattice lattice_;
    SampleGrid geometry_;
    std::vector<ScaleBlock> blocks_;
    std::vector<double> precond_;
};

/// Thrown when an iterative solve fails to reach its tolerance; carries
/// the relative residual trace.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& message, std::vector<double> history)
        : std::runtime_error(message), history_(std::move(history)) {}
    const std::vector<double>& residual_history() const { return history_; }

  private:
    std::vector<double> history_;
};

/// Frame coefficients <f, T_b D_a w_i> = W_{w_i} f(b, a), real valued.
/// Requires a real signal on the system geometry.
std::vector<double> analysis(const Signal& f, const FrameSystem& sys);

/// Adjoint of analysis: sum of c_{i,j} times the sampled atoms.
Signal synthesis(const std::vector<double>& c, const FrameSystem& sys);

/// synthesis(analysis(f)); the frame operator S.
Signal frame_apply(const Signal& f, const FrameSystem& sys);

struct FrameBoundsOptions {
    int max_iter = 400;
    double tol = 1e-4;         // relative eigen-residual target
    unsigned seed = 20260823;
    // Optional band restriction for the probe signals; inactive when
    // xi_hi <= xi_lo.
    double xi_lo = 0.0;
    double xi_hi = 0.0;
};

struct FrameBoundsReport {
    double a_est = 0.0;
    double b_est = 0.0;
    double residual_a = 0.0;
    double residual_b = 0.0;
    int iterations_a = 0;
    int iterations_b = 0;
    bool converged_a = false;
    bool converged_b = false;
    int trials = 0;
};

/// Empirical frame bounds: B_est is the largest Rayleigh quotient
/// ||analysis(f)||^2 / ||f||^2 reached by power iteration on the frame
/// operator; A_est the smallest reached by shifted iteration on
/// sigma I - S with sigma = 1.05 B_est.  Probes are real signals
/// restricted to the central half of the grid.  Estimates are reported
/// with residuals, never asserted as true bounds.
FrameBoundsReport frame_bounds_estimate(const FrameSystem& sys, int trials,
                                        const FrameBoundsOptions& opts = {});

/// Dual-frame reconstruction: conjugate-gradient solve of
/// S f = synthesis(c).  Throws ConvergenceError when max_iter CG steps
/// fail to bring the relative residual under tol.  warm_start, when
/// given, seeds the iteration.
///
/// When xi_hi > xi_lo the solve is restricted to real signals whose
/// spectrum lies in xi_lo <= |xi| <= xi_hi and returns the minimizer in
/// that subspace.  On a truncated lattice the complement of the signal
/// band is under-determined (coarse scales keep only a few translates),
/// so the unrestricted operator is nearly singular there; the restricted
/// operator is well conditioned and the restriction is exact for
/// band-limited signal models.
Signal reconstruct(const std::vector<double>& c, const FrameSystem& sys,
                   double tol = 1e-10, int max_iter = 500,
                   const Signal* warm_start = nullptr, double xi_lo = 0.0,
                   double xi_hi = 0.0);

/// Orthogonal projection onto the range of the analysis operator,
/// realized as analysis(S^{-1} synthesis(c)); with a band restriction,
/// onto the range of analysis over the band subspace.
std::vector<double> range_projection(const std::vector<double>& c,
                                     const FrameSystem& sys,
                                     double tol = 1e-10, int max_iter = 500,
                                     double xi_lo = 0.0, double xi_hi = 0.0);

}  // namespace wsr
