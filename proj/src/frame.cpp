// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

#include "wsr/frame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>

#include "row_eval.hpp"

namespace wsr {

FrameSystem::FrameSystem(std::vector<WaveletSpec> wavelets,
                         HyperbolicLattice lattice, SampleGrid geometry)
    : wavelets_(std::move(wavelets)),
      lattice_(std::move(lattice)),
      geometry_(geometry) {
    validate_grid(geometry_);
    if (wavelets_.empty()) {
        throw std::invalid_argument("frame system requires at least one wavelet");
    }
    for (const WaveletSpec& w : wavelets_) {
        validate_wavelet(w);
        if (!time_domain_real(w)) {
            throw std::invalid_argument(
                "frame system wavelets must be real valued in time");
        }
    }
    const auto& pts = lattice_.points();
    std::size_t lo = 0;
    while (lo < pts.size()) {
        std::size_t hi = lo;
        while (hi < pts.size() && pts[hi].m == pts[lo].m) ++hi;
        ScaleBlock block;
        block.lo = lo;
        block.hi = hi;
        block.a = pts[lo].a;
        block.root_a = std::sqrt(block.a);
        block.aligned = true;
        block.row_index.resize(hi - lo);
        for (std::size_t j = lo; j < hi && block.aligned; ++j) {
            block.aligned =
                detail::grid_aligned(geometry_, pts[j].b, &block.row_index[j - lo]);
        }
        for (const WaveletSpec& w : wavelets_) {
            std::vector<cplx> tab = detail::wavelet_table(w, geometry_, block.a);
            std::vector<cplx> tc = tab;
            detail::conjugate_in_place(tc);
            block.tab.push_back(std::move(tab));
            block.tab_conj.push_back(std::move(tc));
        }
        blocks_.push_back(std::move(block));
        lo = hi;
    }

    // Fourier-diagonal estimate of S.  A full translation row at scale a
    // contributes |g_hat(xi)|^2 / db = |w_hat(a xi)|^2 / beta; truncation
    // to |b| <= b_max scales that by the covered fraction of the period.
    const double span = geometry_.span();
    const double beta = lattice_.beta();
    precond_.assign(geometry_.n, 0.0);
    for (const ScaleBlock& block : blocks_) {
        const double db = block.a * beta;
        const double coverage =
            std::min(1.0, static_cast<double>(block.hi - block.lo) * db / span);
        for (std::size_t i = 0; i < wavelets_.size(); ++i) {
            for (std::size_t k = 0; k < geometry_.n; ++k) {
                precond_[k] += coverage / beta * std::norm(block.tab[i][k]);
            }
        }
    }
    double dmax = 0.0;
    for (double v : precond_) dmax = std::max(dmax, v);
    const double floor = dmax > 0.0 ? 1e-3 * dmax : 1.0;
    for (double& v : precond_) v = std::max(v, floor);
}

namespace {

void check_geometry(const Signal& f, const FrameSystem& sys) {
    if (!(f.grid() == sys.geometry())) {
        throw std::domain_error("signal geometry does not match the frame system");
    }
    if (!f.is_real()) {
        throw std::domain_error("frame analysis is defined for real signals");
    }
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
    double acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) acc += x[j] * y[j];
    return acc;
}

double norm2(const std::vector<double>& x) { return std::sqrt(dot(x, x)); }

std::vector<double> real_samples(const Signal& s) {
    std::vector<double> out(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) out[j] = s.samples()[j].real();
    return out;
}

std::vector<double> apply_operator(const std::vector<double>& x,
                                   const FrameSystem& sys) {
    const Signal fx = Signal::from_real(sys.geometry(), x);
    return real_samples(synthesis(analysis(fx, sys), sys));
}

/// M^{-1} v for the Jacobi preconditioner: divide the spectrum by the
/// cached diagonal.  The diagonal is even in xi, so real stays real.
std::vector<double> apply_precond(const std::vector<double>& v,
                                  const FrameSystem& sys) {
    const SampleGrid& g = sys.geometry();
    const Spectrum spec = dft(Signal::from_real(g, v));
    std::vector<cplx> coeff = spec.coefficients();
    const std::vector<double>& d = sys.fourier_diagonal();
    for (std::size_t k = 0; k < g.n; ++k) coeff[k] /= d[k];
    return real_samples(idft(Spectrum(g, std::move(coeff))));
}

/// Projection onto real signals with spectrum in xi_lo <= |xi| <= xi_hi.
std::vector<double> band_project(const std::vector<double>& v,
                                 const SampleGrid& g, double xi_lo,
                                 double xi_hi) {
    const Spectrum spec = dft(Signal::from_real(g, v));
    std::vector<cplx> coeff = spec.coefficients();
    for (std::size_t k = 0; k < g.n; ++k) {
        const double axi = std::abs(g.xi(k));
        if (axi < xi_lo || axi > xi_hi) coeff[k] = cplx(0.0, 0.0);
    }
    return real_samples(idft(Spectrum(g, std::move(coeff))));
}

}  // namespace

std::vector<double> analysis(const Signal& f, const FrameSystem& sys) {
    check_geometry(f, sys);
    const Spectrum spec = dft(f);
    const SampleGrid& g = sys.geometry();
    const auto& pts = sys.lattice().points();
    const std::size_t npts = pts.size();
    std::vector<double> c(sys.coeff_count());

    for (std::size_t i = 0; i < sys.wavelet_count(); ++i) {
        for (const ScaleBlock& block : sys.scale_blocks()) {
            if (block.aligned) {
                // W(x_j, a) over the grid is an inverse DFT of
                // sqrt(a) f_hat conj(w_hat(a xi)).
                std::vector<cplx> row(g.n);
                for (std::size_t k = 0; k < g.n; ++k) {
                    row[k] = block.root_a * spec.coefficients()[k] *
                             block.tab_conj[i][k];
                }
                const Signal rs = idft(Spectrum(g, std::move(row)));
                for (std::size_t j = block.lo; j < block.hi; ++j) {
                    c[i * npts + j] =
                        rs.samples()[block.row_index[j - block.lo]].real();
                }
            } else {
                std::vector<cplx> weighted(g.n);
                for (std::size_t k = 0; k < g.n; ++k) {
                    weighted[k] = spec.coefficients()[k] * block.tab_conj[i][k];
                }
                const double scale = block.root_a * g.dxi();
                for (std::size_t j = block.lo; j < block.hi; ++j) {
                    c[i * npts + j] =
                        (scale * detail::phased_sum(weighted, g, pts[j].b, +1))
                            .real();
                }
            }
        }
    }
    return c;
}

Signal synthesis(const std::vector<double>& c, const FrameSystem& sys) {
    if (c.size() != sys.coeff_count()) {
        throw std::domain_error("coefficient vector length does not match system");
    }
    const SampleGrid& g = sys.geometry();
    const auto& pts = sys.lattice().points();
    const std::size_t npts = pts.size();
    std::vector<cplx> acc(g.n, cplx(0.0, 0.0));

    for (std::size_t i = 0; i < sys.wavelet_count(); ++i) {
        for (const ScaleBlock& block : sys.scale_blocks()) {
            for (std::size_t j = block.lo; j < block.hi; ++j) {
                const double weight = c[i * npts + j] * block.root_a;
                if (weight == 0.0) continue;
                detail::phased_accumulate(acc, block.tab[i], g, pts[j].b,
                                          cplx(weight, 0.0), -1);
            }
        }
    }
    const Signal s = idft(Spectrum(g, std::move(acc)));
    return Signal::from_real(g, real_samples(s));
}

Signal frame_apply(const Signal& f, const FrameSystem& sys) {
    return synthesis(analysis(f, sys), sys);
}

Signal reconstruct(const std::vector<double>& c, const FrameSystem& sys,
                   double tol, int max_iter, const Signal* warm_start,
                   double xi_lo, double xi_hi) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("reconstruct requires tol > 0");
    }
    if (c.size() != sys.coeff_count()) {
        throw std::domain_error("coefficient vector length does not match system");
    }
    const SampleGrid& g = sys.geometry();
    const bool banded = xi_hi > xi_lo;
    const auto project = [&](std::vector<double> v) {
        return banded ? band_project(v, g, xi_lo, xi_hi) : v;
    };

    const std::vector<double> rhs = project(real_samples(synthesis(c, sys)));
    const double rhs_norm = norm2(rhs);
    if (rhs_norm == 0.0) {
        return Signal::zero(g);
    }

    // Preconditioned conjugate gradients on (P S P) x = P rhs; the
    // operator is symmetric positive semidefinite on range(P) and the
    // right-hand side lies in its range, so the iteration stays in the
    // solvable subspace.  Convergence is measured on the true residual.
    std::vector<double> x(rhs.size(), 0.0);
    if (warm_start != nullptr) {
        check_geometry(*warm_start, sys);
        x = project(real_samples(*warm_start));
    }
    std::vector<double> r = rhs;
    if (warm_start != nullptr) {
        const std::vector<double> sx = project(apply_operator(x, sys));
        for (std::size_t j = 0; j < r.size(); ++j) r[j] -= sx[j];
    }
    std::vector<double> z = project(apply_precond(r, sys));
    std::vector<double> p = z;
    double rz = dot(r, z);
    std::vector<double> history;
    history.push_back(norm2(r) / rhs_norm);
    if (history.back() <= tol) {
        return Signal::from_real(g, x);
    }

    for (int it = 0; it < max_iter; ++it) {
        const std::vector<double> sp = project(apply_operator(p, sys));
        const double psp = dot(p, sp);
        if (!(psp > 0.0)) {
            throw ConvergenceError(
                "conjugate gradient breakdown: curvature vanished", history);
        }
        const double alpha = rz / psp;
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += alpha * p[j];
        for (std::size_t j = 0; j < r.size(); ++j) r[j] -= alpha * sp[j];
        history.push_back(norm2(r) / rhs_norm);
        if (history.back() <= tol) {
            return Signal::from_real(g, x);
        }
        z = project(apply_precond(r, sys));
        const double rz_next = dot(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t j = 0; j < p.size(); ++j) p[j] = z[j] + beta * p[j];
    }
    throw ConvergenceError("conjugate gradient did not reach tolerance", history);
}

std::vector<double> range_projection(const std::vector<double>& c,
                                     const FrameSystem& sys, double tol,
                                     int max_iter, double xi_lo, double xi_hi) {
    const Signal f = reconstruct(c, sys, tol, max_iter, nullptr, xi_lo, xi_hi);
    return analysis(f, sys);
}

namespace {

// Restriction used by the bound estimator: zero outside the central half
// of the grid, then (optionally) project onto a frequency band.
struct Probe {
    const FrameSystem& sys;
    bool band_active;
    double xi_lo, xi_hi;

    std::vector<double> restrict_probe(const std::vector<double>& x) const {
        const SampleGrid& g = sys.geometry();
        std::vector<double> y(g.n, 0.0);
        for (std::size_t j = g.n / 4; j < 3 * g.n / 4; ++j) y[j] = x[j];
        if (!band_active) return y;
        const Spectrum spec = dft(Signal::from_real(g, y));
        std::vector<cplx> coeff = spec.coefficients();
        for (std::size_t k = 0; k < g.n; ++k) {
            const double axi = std::abs(g.xi(k));
            if (axi < xi_lo || axi > xi_hi) coeff[k] = cplx(0.0, 0.0);
        }
        return real_samples(idft(Spectrum(g, std::move(coeff))));
    }
};

}  // namespace

FrameBoundsReport frame_bounds_estimate(const FrameSystem& sys, int trials,
                                        const FrameBoundsOptions& opts) {
    if (trials < 1) {
        throw std::invalid_argument("frame bound estimation requires trials >= 1");
    }
    const Probe probe{sys, opts.xi_hi > opts.xi_lo, opts.xi_lo, opts.xi_hi};
    const std::size_t n = sys.geometry().n;

    FrameBoundsReport rep;
    rep.trials = trials;
    rep.b_est = 0.0;
    rep.a_est = std::numeric_limits<double>::infinity();

    // Phase 1: largest Rayleigh quotient of S over restricted probes.
    for (int t = 0; t < trials; ++t) {
        std::mt19937 rng(opts.seed + static_cast<unsigned>(t));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<double> y(n);
        for (double& v : y) v = gauss(rng);
        y = probe.restrict_probe(y);
        double ny = norm2(y);
        if (ny == 0.0) continue;
        for (double& v : y) v /= ny;

        double rayleigh = 0.0;
        double resid = 1.0;
        int it = 0;
        for (; it < opts.max_iter; ++it) {
            const std::vector<double> z = apply_operator(y, sys);
            rayleigh = dot(z, y);
            std::vector<double> qz = probe.restrict_probe(z);
            double worst = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double d = qz[j] - rayleigh * y[j];
                worst += d * d;
            }
            resid = rayleigh > 0.0 ? std::sqrt(worst) / rayleigh : 0.0;
            const double nqz = norm2(qz);
            if (nqz == 0.0) break;
            for (std::size_t j = 0; j < n; ++j) y[j] = qz[j] / nqz;
            if (resid < opts.tol) break;
        }
        if (rayleigh > rep.b_est) {
            rep.b_est = rayleigh;
            rep.residual_b = resid;
            rep.iterations_b = it;
            rep.converged_b = resid < opts.tol;
        }
    }

    // Phase 2: smallest Rayleigh quotient via power iteration on
    // sigma I - S, sigma = 1.05 B_est.
    const double sigma = 1.05 * rep.b_est;
    if (rep.b_est == 0.0) {
        rep.a_est = 0.0;
        rep.converged_a = true;
        return rep;
    }
    for (int t = 0; t < trials; ++t) {
        std::mt19937 rng(opts.seed + 7919u * static_cast<unsigned>(t + 1));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<double> y(n);
        for (double& v : y) v = gauss(rng);
        y = probe.restrict_probe(y);
        double ny = norm2(y);
        if (ny == 0.0) continue;
        for (double& v : y) v /= ny;

        double rayleigh = sigma;
        double resid = 1.0;
        int it = 0;
        for (; it < opts.max_iter; ++it) {
            const std::vector<double> z = apply_operator(y, sys);
            rayleigh = dot(z, y);
            std::vector<double> shifted(n);
            for (std::size_t j = 0; j < n; ++j) {
                shifted[j] = sigma * y[j] - z[j];
            }
            std::vector<double> qs = probe.restrict_probe(shifted);
            const double mu = sigma - rayleigh;
            double worst = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double d = qs[j] - mu * y[j];
                worst += d * d;
            }
            resid = mu > 0.0 ? std::sqrt(worst) / mu : 0.0;
            const double nqs = norm2(qs);
            if (nqs == 0.0) break;
            for (std::size_t j = 0; j < n; ++j) y[j] = qs[j] / nqs;
            if (resid < opts.tol) break;
        }
        if (rayleigh < rep.a_est) {
            rep.a_est = rayleigh;
            rep.residual_a = resid;
            rep.iterations_a = it;
            rep.converged_a = resid < opts.tol;
        }
    }
    if (!std::isfinite(rep.a_est)) rep.a_est = 0.0;
    rep.a_est = std::max(rep.a_est, 0.0);
    return rep;
}

}  // namespace wsr
