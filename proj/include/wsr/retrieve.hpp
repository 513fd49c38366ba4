// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "wsr/frame.hpp"
#include "wsr/lattice.hpp"
#include "wsr/signal.hpp"

namespace wsr {

/// Family of N real measurement vectors in R^M.
struct MeasurementVectors {
    std::vector<std::vector<double>> vectors;
};

/// True iff every M-subset of the family spans R^M.
bool full_spark(const MeasurementVectors& vecs, std::size_t M);

/// True iff for every index subset S, the vectors of S or those of its
/// complement span R^M.  Exhaustive over 2^N subsets; N <= 24.
bool complement_property(const MeasurementVectors& vecs, std::size_t M);

/// Per-lattice-point magnitude triples |W_{phi_i} f(b,a)|, i = 1..3
/// (the third entry is ignored by two-vector ablation runs).
struct MagnitudeField {
    HyperbolicLattice lattice;
    std::vector<std::array<double, 3>> triples;
};

/// Magnitudes of a coefficient grid: triples[j][i] = |coeffs[i][j]|,
/// padded with zeros when the grid has fewer than three wavelets.
MagnitudeField magnitude_field(const CoefficientGrid& grid);

enum class PointStatus { Resolved, Deferred, Ambiguous };

std::string to_string(PointStatus status);

/// Outcome of one pointwise retrieval: the best candidate v (gauge
/// <v, lambda_1> = +m_1), the second candidate from the opposite
/// relative sign, and the third-measurement residuals of both.
struct PointRetrieval {
    std::array<double, 2> v{0.0, 0.0};
    std::array<double, 2> v_alt{0.0, 0.0};
    PointStatus status = PointStatus::Deferred;
    double residual = 0.0;
    double residual_alt = 0.0;
};

/// Recovered 2-vectors with statuses and, after synchronization, a
/// per-point sign (+1/-1 on synchronized points, 0 where unset).
struct SignField {
    HyperbolicLattice lattice;
    std::vector<PointRetrieval> points;
    std::vector<int> sign;
};

struct RetrieveOptions {
    double tau_rel = 1e-8;   // deferral threshold, relative to max ||v_j||
    double delta = 1e-6;     // third-measurement match tolerance, relative
    double sync_tol = 1e-8;  // refinement stop on relative coefficient change
    int sync_max_iter = 200;
    double cg_tol = 1e-10;
    int cg_max_iter = 500;
    // Spectral restriction of the reconstruction solves (see
    // reconstruct); active when xi_hi > xi_lo.  Set this to the signal
    // model's band on truncated lattices.
    double xi_lo = 0.0;
    double xi_hi = 0.0;
};

/// Recover (W_P, W_HP) up to sign from a magnitude triple.  vecs must be
/// a full-spark family of 3 vectors in R^2; tau is the absolute deferral
/// threshold.  Solves the 2x2 system of (lambda_1, lambda_2) under both
/// relative signs and scores each against |<v, lambda_3>| = m_3.
PointRetrieval point_sign_retrieve(const std::array<double, 3>& m,
                                   const MeasurementVectors& vecs, double tau,
                                   double delta = 1e-6);

/// point_sign_retrieve across a field, with the deferral threshold set in
/// a second pass to tau_rel times the largest recovered norm.
SignField field_retrieve(const MagnitudeField& mf,
                         const MeasurementVectors& vecs,
                         const RetrieveOptions& opts = {});

struct SyncOutcome {
    SignField field;
    Signal reconstruction;  // reconstruction from the synchronized field
    bool converged = false;
    bool spectral_init = false;  // stage 1 ran (band set, enough resolved)
    int iterations = 0;
    double change_residual = 0.0;  // last relative coefficient change
    double range_residual = 0.0;   // ||analysis(f) - c|| / ||c|| at the end
};

/// Assign the per-point signs in two stages.  (1) Alignment nullspace:
/// dropping the magnitudes, an admissible signal g must have lattice
/// coefficients parallel to the recovered directions,
/// <u_j^perp, analysis(g)_j> = 0 at every resolved point.  Restricted
/// to the band [xi_lo, xi_hi] these homogeneous constraints outnumber
/// the degrees of freedom and their nullspace is spanned by the sought
/// signal alone, so the smallest eigenvector of the dense normal matrix
/// yields every relative sign at once.  (2) Alternating refinement
/// between dual-frame reconstruction and re-imposition of the recovered
/// magnitudes and directions.  Output is defined up to one global sign.
SyncOutcome global_sign_sync(const SignField& field, const FrameSystem& sys,
                             const RetrieveOptions& opts = {});

struct QualityReport {
    std::size_t resolved = 0;
    std::size_t deferred = 0;
    std::size_t ambiguous = 0;
    bool sync_converged = true;
    int sync_iterations = 0;
    double sync_residual = 0.0;
    double range_residual = 0.0;
    /// Relative mismatch between |<d_j, lambda_i>| of the recovered
    /// coefficients and the measured magnitudes, over all points and i.
    double magnitude_residual = 0.0;
    bool density_warning = false;
    bool contract_void = false;
    std::vector<std::string> warnings;
};

struct RecoveryResult {
    Signal f;
    SignField field;
    QualityReport report;
};

/// Full pipeline: pointwise retrieval, global sign synchronization,
/// dual-frame reconstruction of the (P, HP) pair coefficients.  The
/// result is determined up to one global sign.  sys must be the
/// two-wavelet system the magnitudes refer to.
RecoveryResult recover_signal(const MagnitudeField& mf, const FrameSystem& sys,
                              const MeasurementVectors& vecs,
                              const RetrieveOptions& opts = {});

/// g = Re f - i Im f; every real wavelet gives |W g| = |W f| while
/// g differs from f beyond a unimodular factor for generic complex f.
/// Requires both Re f and Im f to carry more than 1e-6 of ||f||.
Signal conjugate_counterexample(const Signal& f);

/// min over |c| = 1 of ||f - c g||, in closed form
/// sqrt(||f||^2 + ||g||^2 - 2 |<f, g>|).
double unimodular_distance(const Signal& f, const Signal& g);

}  // namespace wsr
