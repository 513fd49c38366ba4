// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

#include "wsr/retrieve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include <lapacke.h>

namespace wsr {

namespace {

double vnorm2(const std::array<double, 2>& v) {
    return std::hypot(v[0], v[1]);
}

double vdot(const std::array<double, 2>& x, const std::array<double, 2>& y) {
    return x[0] * y[0] + x[1] * y[1];
}

std::size_t matrix_rank(std::vector<std::vector<double>> rows, std::size_t M) {
    double scale = 0.0;
    for (const auto& r : rows) {
        for (double v : r) scale = std::max(scale, std::abs(v));
    }
    if (scale == 0.0) return 0;
    const double tol = 1e-12 * scale;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < M && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (std::abs(rows[r][col]) > std::abs(rows[pivot][col])) pivot = r;
        }
        if (std::abs(rows[pivot][col]) <= tol) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            const double factor = rows[r][col] / rows[rank][col];
            for (std::size_t cc = col; cc < M; ++cc) {
                rows[r][cc] -= factor * rows[rank][cc];
            }
        }
        ++rank;
    }
    return rank;
}

bool subset_spans(const MeasurementVectors& vecs, unsigned long mask,
                  std::size_t M) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < vecs.vectors.size(); ++i) {
        if (mask & (1ul << i)) rows.push_back(vecs.vectors[i]);
    }
    if (rows.size() < M) return false;
    return matrix_rank(std::move(rows), M) == M;
}

void check_dimensions(const MeasurementVectors& vecs, std::size_t M) {
    if (M == 0) throw std::domain_error("measurement dimension must be positive");
    if (vecs.vectors.empty()) {
        throw std::domain_error("measurement family must be nonempty");
    }
    for (const auto& v : vecs.vectors) {
        if (v.size() != M) {
            throw std::domain_error("measurement vector dimension mismatch");
        }
        for (double x : v) {
            if (!std::isfinite(x)) {
                throw std::domain_error("measurement vectors must be finite");
            }
        }
    }
}

}  // namespace

bool full_spark(const MeasurementVectors& vecs, std::size_t M) {
    check_dimensions(vecs, M);
    const std::size_t N = vecs.vectors.size();
    if (N < M) return true;  // no M-subset exists
    if (M == 2) {
        // Pairwise determinant test with a relative threshold.
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t j = i + 1; j < N; ++j) {
                const auto& u = vecs.vectors[i];
                const auto& w = vecs.vectors[j];
                const double det = u[0] * w[1] - u[1] * w[0];
                const double scale =
                    std::hypot(u[0], u[1]) * std::hypot(w[0], w[1]);
                if (!(std::abs(det) > 1e-12 * scale)) return false;
            }
        }
        return true;
    }
    // Enumerate M-subsets by index vector.
    std::vector<std::size_t> idx(M);
    for (std::size_t i = 0; i < M; ++i) idx[i] = i;
    while (true) {
        std::vector<std::vector<double>> rows;
        for (std::size_t i : idx) rows.push_back(vecs.vectors[i]);
        if (matrix_rank(std::move(rows), M) != M) return false;
        std::size_t k = M;
        while (k > 0 && idx[k - 1] == N - M + k - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t i = k; i < M; ++i) idx[i] = idx[i - 1] + 1;
    }
    return true;
}

bool complement_property(const MeasurementVectors& vecs, std::size_t M) {
    check_dimensions(vecs, M);
    const std::size_t N = vecs.vectors.size();
    if (N > 24) {
        throw std::length_error(
            "complement property scan limited to 24 vectors");
    }
    const unsigned long full = (1ul << N) - 1ul;
    // Each mask is checked together with its complement, so half suffice.
    for (unsigned long mask = 0; mask < (1ul << (N - 1)); ++mask) {
        if (!subset_spans(vecs, mask, M) &&
            !subset_spans(vecs, full & ~mask, M)) {
            return false;
        }
    }
    return true;
}

MagnitudeField magnitude_field(const CoefficientGrid& grid) {
    if (grid.wavelets.empty() || grid.wavelets.size() > 3) {
        throw std::domain_error(
            "magnitude field expects a grid of one to three wavelets");
    }
    MagnitudeField mf{grid.lattice, {}};
    mf.triples.assign(grid.lattice.size(), {0.0, 0.0, 0.0});
    for (std::size_t i = 0; i < grid.wavelets.size(); ++i) {
        for (std::size_t j = 0; j < grid.coeffs[i].size(); ++j) {
            mf.triples[j][i] = std::abs(grid.coeffs[i][j]);
        }
    }
    return mf;
}

std::string to_string(PointStatus status) {
    switch (status) {
        case PointStatus::Resolved: return "resolved";
        case PointStatus::Deferred: return "deferred";
        case PointStatus::Ambiguous: return "ambiguous";
    }
    throw std::invalid_argument("unknown point status");
}

namespace {

struct PairSolver {
    // Rows lambda_1, lambda_2 and the inverse of [lambda_1; lambda_2].
    std::array<double, 2> l1, l2, l3;
    double inv00, inv01, inv10, inv11;
    bool has_third = false;

    explicit PairSolver(const MeasurementVectors& vecs) {
        l1 = {vecs.vectors[0][0], vecs.vectors[0][1]};
        l2 = {vecs.vectors[1][0], vecs.vectors[1][1]};
        if (vecs.vectors.size() > 2) {
            l3 = {vecs.vectors[2][0], vecs.vectors[2][1]};
            has_third = true;
        } else {
            l3 = {0.0, 0.0};
        }
        const double det = l1[0] * l2[1] - l1[1] * l2[0];
        inv00 = l2[1] / det;
        inv01 = -l1[1] / det;
        inv10 = -l2[0] / det;
        inv11 = l1[0] / det;
    }

    std::array<double, 2> solve(double m1, double m2_signed) const {
        return {inv00 * m1 + inv01 * m2_signed, inv10 * m1 + inv11 * m2_signed};
    }
};

PointRetrieval classify(const PairSolver& solver,
                        const std::array<double, 3>& m, double tau,
                        double delta) {
    const std::array<double, 2> vp = solver.solve(m[0], m[1]);
    const std::array<double, 2> vm = solver.solve(m[0], -m[1]);
    double rp = 0.0;
    double rm = 0.0;
    if (solver.has_third) {
        rp = std::abs(std::abs(vdot(vp, solver.l3)) - m[2]);
        rm = std::abs(std::abs(vdot(vm, solver.l3)) - m[2]);
    }
    PointRetrieval out;
    if (rp <= rm) {
        out.v = vp;
        out.v_alt = vm;
        out.residual = rp;
        out.residual_alt = rm;
    } else {
        out.v = vm;
        out.v_alt = vp;
        out.residual = rm;
        out.residual_alt = rp;
    }
    const double m_norm = std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]);
    const double nv = vnorm2(out.v);
    const bool distinct_candidates =
        std::min(std::hypot(vp[0] - vm[0], vp[1] - vm[1]),
                 std::hypot(vp[0] + vm[0], vp[1] + vm[1])) >
        delta * std::max(vnorm2(vp), vnorm2(vm));
    if (nv <= tau) {
        out.status = PointStatus::Deferred;
    } else if (solver.has_third && out.residual > delta * m_norm) {
        // The third magnitude is consistent with neither candidate.
        out.status = PointStatus::Ambiguous;
    } else if (distinct_candidates &&
               (!solver.has_third || out.residual_alt <= delta * m_norm)) {
        out.status = PointStatus::Ambiguous;
    } else {
        out.status = PointStatus::Resolved;
    }
    return out;
}

void validate_triple(const std::array<double, 3>& m) {
    for (double x : m) {
        if (!std::isfinite(x) || x < 0.0) {
            throw std::invalid_argument(
                "magnitude entries must be finite and nonnegative");
        }
    }
}

void validate_lambda_family(const MeasurementVectors& vecs, bool allow_pair) {
    check_dimensions(vecs, 2);
    const std::size_t n = vecs.vectors.size();
    if (n != 3 && !(allow_pair && n == 2)) {
        throw std::domain_error(
            "pointwise retrieval expects 3 measurement vectors in R^2");
    }
    if (!full_spark(vecs, 2)) {
        throw std::domain_error("measurement vectors must be full spark");
    }
}

}  // namespace

PointRetrieval point_sign_retrieve(const std::array<double, 3>& m,
                                   const MeasurementVectors& vecs, double tau,
                                   double delta) {
    validate_lambda_family(vecs, /*allow_pair=*/false);
    validate_triple(m);
    if (!(tau >= 0.0) || !(delta > 0.0)) {
        throw std::invalid_argument("retrieval thresholds out of range");
    }
    return classify(PairSolver(vecs), m, tau, delta);
}

SignField field_retrieve(const MagnitudeField& mf,
                         const MeasurementVectors& vecs,
                         const RetrieveOptions& opts) {
    validate_lambda_family(vecs, /*allow_pair=*/true);
    if (mf.triples.size() != mf.lattice.size()) {
        throw std::domain_error("magnitude field is not aligned to its lattice");
    }
    for (const auto& m : mf.triples) validate_triple(m);
    const PairSolver solver(vecs);

    // First pass with zero threshold to learn the field's scale.
    double vmax = 0.0;
    for (const auto& m : mf.triples) {
        vmax = std::max(vmax, vnorm2(classify(solver, m, 0.0, opts.delta).v));
    }
    const double tau = opts.tau_rel * vmax;

    SignField field{mf.lattice, {}, {}};
    field.points.reserve(mf.triples.size());
    for (const auto& m : mf.triples) {
        field.points.push_back(classify(solver, m, tau, opts.delta));
    }
    field.sign.assign(mf.triples.size(), 0);
    return field;
}

namespace {

// Stage-1 worker: signs from the phase-alignment nullspace.  The rows of
// L are <u_j^perp, analysis(mode)_j> over resolved points j and cos/sin
// modes spanning the band; the smallest eigenvector of L^T L is the band
// signal whose coefficients align with every recovered direction.  Signs
// follow by correlating its analysis against the v_j; ambiguous points
// also pick their better candidate.  Returns false (leaving `sign`
// untouched) when the constraints cannot pin a one-dimensional nullspace:
// no band restriction, or fewer resolved points than band modes.
bool align_nullspace_init(SignField& field, const FrameSystem& sys,
                          const RetrieveOptions& opts,
                          const std::vector<std::size_t>& eligible,
                          std::vector<int>& sign) {
    if (!(opts.xi_hi > opts.xi_lo)) return false;
    const SampleGrid grid = sys.geometry();
    const std::size_t npts = sys.point_count();

    std::vector<std::size_t> res;
    for (std::size_t j : eligible) {
        if (field.points[j].status == PointStatus::Resolved) res.push_back(j);
    }

    std::vector<Signal> modes;
    for (std::size_t k = 1; k < grid.n / 2; ++k) {
        const double xi = static_cast<double>(k) * grid.dxi();
        if (xi < opts.xi_lo - 1e-12 || xi > opts.xi_hi + 1e-12) continue;
        std::vector<cplx> cosv(grid.n), sinv(grid.n);
        for (std::size_t j = 0; j < grid.n; ++j) {
            const double ph = 2.0 * std::numbers::pi * xi * grid.x(j);
            cosv[j] = std::cos(ph);
            sinv[j] = std::sin(ph);
        }
        modes.emplace_back(grid, std::move(cosv), /*real_valued=*/true);
        modes.emplace_back(grid, std::move(sinv), /*real_valued=*/true);
    }
    const std::size_t nb = modes.size();
    if (nb == 0 || res.size() < nb) return false;

    // Normal matrix N = L^T L, accumulated one mode-analysis at a time.
    std::vector<std::vector<double>> rows(res.size(),
                                          std::vector<double>(nb));
    for (std::size_t c = 0; c < nb; ++c) {
        const std::vector<double> d = analysis(modes[c], sys);
        for (std::size_t r = 0; r < res.size(); ++r) {
            const auto& v = field.points[res[r]].v;
            const double nv = vnorm2(v);
            rows[r][c] = (-v[1] * d[res[r]] + v[0] * d[npts + res[r]]) / nv;
        }
    }
    std::vector<double> normal(nb * nb, 0.0);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < nb; ++i) {
            for (std::size_t j = i; j < nb; ++j) {
                normal[i * nb + j] += row[i] * row[j];
            }
        }
    }
    std::vector<double> eig(nb);
    const lapack_int info = LAPACKE_dsyev(
        LAPACK_ROW_MAJOR, 'V', 'U', static_cast<lapack_int>(nb),
        normal.data(), static_cast<lapack_int>(nb), eig.data());
    if (info != 0) return false;

    // Eigenvalues ascend, so column 0 spans the (near-)null direction.
    std::vector<cplx> acc(grid.n, 0.0);
    for (std::size_t c = 0; c < nb; ++c) {
        const double w = normal[c * nb + 0];
        for (std::size_t j = 0; j < grid.n; ++j) {
            acc[j] += w * modes[c].samples()[j];
        }
    }
    const Signal g(grid, std::move(acc), /*real_valued=*/true);
    const std::vector<double> d0 = analysis(g, sys);
    for (std::size_t j : eligible) {
        PointRetrieval& pt = field.points[j];
        const std::array<double, 2> dj{d0[j], d0[npts + j]};
        if (pt.status == PointStatus::Resolved) {
            sign[j] = vdot(pt.v, dj) >= 0.0 ? 1 : -1;
        } else {
            // Ambiguous: candidate and sign from the stronger correlation.
            if (std::abs(vdot(pt.v_alt, dj)) > std::abs(vdot(pt.v, dj))) {
                std::swap(pt.v, pt.v_alt);
                std::swap(pt.residual, pt.residual_alt);
            }
            sign[j] = vdot(pt.v, dj) >= 0.0 ? 1 : -1;
        }
    }
    return true;
}

std::vector<double> assemble_coeffs(const SignField& field,
                                    const std::vector<int>& sign,
                                    std::size_t npts) {
    std::vector<double> c(2 * npts, 0.0);
    for (std::size_t j = 0; j < npts; ++j) {
        if (sign[j] == 0) continue;
        const auto& v = field.points[j].v;
        c[j] = sign[j] * v[0];
        c[npts + j] = sign[j] * v[1];
    }
    return c;
}

double rel_change(const std::vector<double>& a, const std::vector<double>& b) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += a[i] * a[i];
    }
    if (den == 0.0) return num == 0.0 ? 0.0 : 1.0;
    return std::sqrt(num / den);
}

}  // namespace

SyncOutcome global_sign_sync(const SignField& field, const FrameSystem& sys,
                             const RetrieveOptions& opts) {
    if (sys.wavelet_count() != 2) {
        throw std::domain_error(
            "sign synchronization expects the two-wavelet pair system");
    }
    if (!(field.lattice == sys.lattice())) {
        throw std::domain_error("sign field lattice does not match the system");
    }
    const std::size_t npts = sys.point_count();
    if (field.points.size() != npts) {
        throw std::domain_error("sign field is not aligned to its lattice");
    }

    std::vector<std::size_t> eligible;
    for (std::size_t j = 0; j < npts; ++j) {
        if (field.points[j].status != PointStatus::Deferred) eligible.push_back(j);
    }
    if (eligible.empty()) {
        throw std::domain_error("sign synchronization needs resolved points");
    }

    SyncOutcome out{field, Signal::zero(sys.geometry()),
                    false, false, 0, 0.0, 0.0};
    std::vector<int>& sign = out.field.sign;
    for (std::size_t j : eligible) sign[j] = 1;
    // Stage 1; on fallback the refinement below starts from all-plus.
    out.spectral_init = align_nullspace_init(out.field, sys, opts,
                                             eligible, sign);

    // Stage 2: alternate dual-frame reconstruction with re-imposition of
    // the recovered magnitudes and directions; deferred points stay free.
    std::vector<double> c = assemble_coeffs(out.field, sign, npts);
    Signal f = Signal::zero(sys.geometry());
    bool have_f = false;
    double change = 1.0;
    int it = 0;
    for (; it < opts.sync_max_iter; ++it) {
        f = reconstruct(c, sys, opts.cg_tol, opts.cg_max_iter,
                        have_f ? &f : nullptr, opts.xi_lo, opts.xi_hi);
        have_f = true;
        const std::vector<double> d = analysis(f, sys);
        std::vector<double> c_new(2 * npts, 0.0);
        int flips = 0;
        for (std::size_t j = 0; j < npts; ++j) {
            PointRetrieval& pt = out.field.points[j];
            if (pt.status == PointStatus::Deferred) {
                c_new[j] = d[j];
                c_new[npts + j] = d[npts + j];
                continue;
            }
            const std::array<double, 2> dj{d[j], d[npts + j]};
            if (pt.status == PointStatus::Resolved) {
                const double corr = vdot(pt.v, dj);
                int s = sign[j];
                if (corr != 0.0) s = corr > 0.0 ? 1 : -1;
                if (s != sign[j]) ++flips;
                sign[j] = s;
                c_new[j] = s * pt.v[0];
                c_new[npts + j] = s * pt.v[1];
            } else {
                // Ambiguous: choose among both candidates and both signs.
                double best = -1.0;
                std::array<double, 2> pick{pt.v[0], pt.v[1]};
                bool pick_alt = false;
                int pick_sign = 1;
                for (int which = 0; which < 2; ++which) {
                    const auto& cand = which == 0 ? pt.v : pt.v_alt;
                    for (int s = -1; s <= 1; s += 2) {
                        const double corr = s * vdot(cand, dj);
                        if (corr > best) {
                            best = corr;
                            pick = cand;
                            pick_alt = which == 1;
                            pick_sign = s;
                        }
                    }
                }
                if (pick_alt) {
                    std::swap(pt.v, pt.v_alt);
                    std::swap(pt.residual, pt.residual_alt);
                }
                if (pick_sign != sign[j]) ++flips;
                sign[j] = pick_sign;
                c_new[j] = pick_sign * pick[0];
                c_new[npts + j] = pick_sign * pick[1];
            }
        }
        change = rel_change(c_new, c);
        c = std::move(c_new);
        if (flips == 0 && change < opts.sync_tol) {
            out.converged = true;
            ++it;
            break;
        }
    }
    out.iterations = it;
    out.change_residual = change;
    f = reconstruct(c, sys, opts.cg_tol, opts.cg_max_iter,
                    have_f ? &f : nullptr, opts.xi_lo, opts.xi_hi);
    out.reconstruction = f;
    const std::vector<double> d = analysis(f, sys);
    out.range_residual = rel_change(d, c);
    return out;
}

RecoveryResult recover_signal(const MagnitudeField& mf, const FrameSystem& sys,
                              const MeasurementVectors& vecs,
                              const RetrieveOptions& opts) {
    validate_lambda_family(vecs, /*allow_pair=*/true);
    if (sys.wavelet_count() != 2) {
        throw std::domain_error(
            "signal recovery expects the two-wavelet pair system");
    }
    if (!(mf.lattice == sys.lattice())) {
        throw std::domain_error("magnitude field lattice does not match system");
    }

    RecoveryResult result{Signal::zero(sys.geometry()),
                          SignField{mf.lattice, {}, {}},
                          {}};
    QualityReport& rep = result.report;

    const DensityReport density = density_report(
        sys.lattice().beta(), sys.lattice().alpha(), sys.wavelets()[0].p);
    if (!density.sign_retrieval_unique.satisfied) {
        rep.density_warning = true;
        rep.warnings.push_back(
            "lattice density exceeds the sign-retrieval uniqueness threshold");
    }
    if (vecs.vectors.size() < 3) {
        rep.contract_void = true;
        rep.warnings.push_back(
            "two-wavelet ablation: no recovery contract attached");
    }

    SignField field = field_retrieve(mf, vecs, opts);
    for (const PointRetrieval& pt : field.points) {
        switch (pt.status) {
            case PointStatus::Resolved: ++rep.resolved; break;
            case PointStatus::Deferred: ++rep.deferred; break;
            case PointStatus::Ambiguous: ++rep.ambiguous; break;
        }
    }
    if (rep.resolved + rep.ambiguous == 0) {
        // Nothing carries signal energy; the zero signal is the answer.
        result.field = std::move(field);
        return result;
    }
    if (rep.resolved == 0) {
        rep.warnings.push_back(
            "no resolved points; synchronization ran on ambiguous candidates");
    }

    SyncOutcome outcome = global_sign_sync(field, sys, opts);
    result.f = outcome.reconstruction;
    result.field = std::move(outcome.field);
    rep.sync_converged = outcome.converged;
    rep.sync_iterations = outcome.iterations;
    rep.sync_residual = outcome.change_residual;
    rep.range_residual = outcome.range_residual;
    if (!outcome.converged) {
        rep.warnings.push_back("sign synchronization did not converge");
    }
    if (!outcome.spectral_init) {
        rep.warnings.push_back(
            "sign synchronization ran without its nullspace initializer "
            "(no band restriction, or too few resolved points)");
    }

    const std::vector<double> d = analysis(result.f, sys);
    const std::size_t npts = sys.point_count();
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < npts; ++j) {
        const std::array<double, 2> dj{d[j], d[npts + j]};
        for (std::size_t i = 0; i < vecs.vectors.size(); ++i) {
            const std::array<double, 2> li{vecs.vectors[i][0],
                                           vecs.vectors[i][1]};
            const double pred = std::abs(vdot(dj, li));
            const double meas = mf.triples[j][i];
            num += (pred - meas) * (pred - meas);
            den += meas * meas;
        }
    }
    rep.magnitude_residual = den > 0.0 ? std::sqrt(num / den) : 0.0;
    return result;
}

Signal conjugate_counterexample(const Signal& f) {
    double total = 0.0;
    double re_part = 0.0;
    double im_part = 0.0;
    for (const cplx& v : f.samples()) {
        total += std::norm(v);
        re_part += v.real() * v.real();
        im_part += v.imag() * v.imag();
    }
    total = std::sqrt(total);
    re_part = std::sqrt(re_part);
    im_part = std::sqrt(im_part);
    if (total == 0.0 || re_part <= 1e-6 * total || im_part <= 1e-6 * total) {
        throw std::domain_error(
            "counterexample needs genuinely complex input: both real and "
            "imaginary parts must carry mass");
    }
    std::vector<cplx> g(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) g[j] = std::conj(f.samples()[j]);
    return Signal(f.grid(), std::move(g), /*real_valued=*/false);
}

double unimodular_distance(const Signal& f, const Signal& g) {
    if (!(f.grid() == g.grid())) {
        throw std::invalid_argument("unimodular distance requires matching grids");
    }
    const double nf = norm_l2(f);
    const double ng = norm_l2(g);
    const double cross = std::abs(inner(f, g));
    const double sq = nf * nf + ng * ng - 2.0 * cross;
    return std::sqrt(std::max(sq, 0.0));
}

}  // namespace wsr
