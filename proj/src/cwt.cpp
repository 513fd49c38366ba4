// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

#include "wsr/cwt.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "row_eval.hpp"

namespace wsr {

namespace {

void validate_point(double b, double a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw std::domain_error("wavelet transform requires scale a > 0");
    }
    if (!std::isfinite(b)) {
        throw std::domain_error("wavelet transform requires finite b");
    }
}

/// W(x_j, a) for every grid position x_j at once: the b-dependence of the
/// spectral sum is itself an inverse DFT of sqrt(a) f_hat conj(w_hat(a xi)).
std::vector<cplx> scale_row(const Spectrum& spec,
                            const std::vector<cplx>& wtab_conj, double a) {
    const SampleGrid& g = spec.grid();
    std::vector<cplx> row(g.n);
    const double root_a = std::sqrt(a);
    for (std::size_t k = 0; k < g.n; ++k) {
        row[k] = root_a * spec.coefficients()[k] * wtab_conj[k];
    }
    return idft(Spectrum(g, std::move(row))).samples();
}

DensityGate make_gate(double d, double threshold, bool strict) {
    DensityGate gate;
    gate.threshold = threshold;
    gate.slack = threshold - d;
    gate.boundary = std::abs(d - threshold) <= 1e-12 * threshold;
    if (gate.boundary) {
        gate.satisfied = !strict;
    } else {
        gate.satisfied = d < threshold;
    }
    return gate;
}

}  // namespace

cplx cwt_point(const Spectrum& spec, const WaveletSpec& w, double b, double a) {
    validate_point(b, a);
    const SampleGrid& g = spec.grid();
    std::vector<cplx> tab = detail::wavelet_table(w, g, a);
    detail::conjugate_in_place(tab);
    for (std::size_t k = 0; k < g.n; ++k) tab[k] *= spec.coefficients()[k];
    const cplx acc = detail::phased_sum(tab, g, b, +1);
    return std::sqrt(a) * g.dxi() * acc;
}

CoefficientGrid cwt_lattice(const Spectrum& spec,
                            const std::vector<WaveletSpec>& wavelets,
                            const HyperbolicLattice& lattice) {
    if (wavelets.empty()) {
        throw std::domain_error("cwt_lattice requires at least one wavelet");
    }
    for (const WaveletSpec& w : wavelets) validate_wavelet(w);
    const SampleGrid& g = spec.grid();
    const auto& pts = lattice.points();

    CoefficientGrid out{lattice, wavelets, {}};
    out.coeffs.assign(wavelets.size(), std::vector<cplx>(pts.size()));

    // Points arrive sorted by (m, n); process one constant-scale run at a
    // time so the wavelet table is built once per (wavelet, scale).
    std::size_t lo = 0;
    while (lo < pts.size()) {
        std::size_t hi = lo;
        while (hi < pts.size() && pts[hi].m == pts[lo].m) ++hi;
        const double a = pts[lo].a;
        validate_point(0.0, a);

        bool aligned = true;
        std::vector<std::size_t> row_index(hi - lo);
        for (std::size_t j = lo; j < hi && aligned; ++j) {
            aligned = detail::grid_aligned(g, pts[j].b, &row_index[j - lo]);
        }

        for (std::size_t i = 0; i < wavelets.size(); ++i) {
            std::vector<cplx> tab = detail::wavelet_table(wavelets[i], g, a);
            detail::conjugate_in_place(tab);
            if (aligned) {
                const std::vector<cplx> row = scale_row(spec, tab, a);
                for (std::size_t j = lo; j < hi; ++j) {
                    out.coeffs[i][j] = row[row_index[j - lo]];
                }
            } else {
                std::vector<cplx> weighted(g.n);
                for (std::size_t k = 0; k < g.n; ++k) {
                    weighted[k] = spec.coefficients()[k] * tab[k];
                }
                const double scale = std::sqrt(a) * g.dxi();
                for (std::size_t j = lo; j < hi; ++j) {
                    out.coeffs[i][j] =
                        scale * detail::phased_sum(weighted, g, pts[j].b, +1);
                }
            }
        }
        lo = hi;
    }
    return out;
}

DensityReport density_report(double beta, double alpha, double p,
                             const std::vector<double>& bergman_weights) {
    if (!(alpha > 1.0) || !std::isfinite(alpha)) {
        throw std::domain_error("density report requires alpha > 1");
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw std::domain_error("density report requires beta > 0");
    }
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw std::domain_error("density report requires p > 0");
    }
    DensityReport rep;
    rep.beta = beta;
    rep.alpha = alpha;
    rep.p = p;
    rep.d = beta * std::log(alpha);
    const double two_pi = 2.0 * std::numbers::pi;
    rep.poisson_pair_frame = make_gate(rep.d, two_pi / p, /*strict=*/true);
    rep.sign_retrieval_unique =
        make_gate(rep.d, 2.0 * two_pi / (1.0 + 4.0 * p), /*strict=*/false);
    for (double w : bergman_weights) {
        if (!(w > 1.0) || !std::isfinite(w)) {
            throw std::domain_error("Bergman weight must exceed 1");
        }
        rep.bergman_sampling.push_back(
            BergmanGate{w, make_gate(rep.d, 2.0 * two_pi / (w - 1.0),
                                     /*strict=*/true)});
    }
    return rep;
}

BergmanField bergman_lift(const CoefficientGrid& grid, double p) {
    if (grid.wavelets.size() != 1 ||
        grid.wavelets[0].kind != WaveletKind::Cauchy) {
        throw std::domain_error(
            "Bergman lift requires a grid computed with a single Cauchy wavelet");
    }
    if (std::abs(grid.wavelets[0].p - p) > 1e-12 * std::max(1.0, std::abs(p))) {
        throw std::domain_error("Bergman lift order does not match the grid wavelet");
    }
    BergmanField field{grid.lattice, p, {}};
    field.values.resize(grid.coeffs[0].size());
    const auto& pts = grid.lattice.points();
    for (std::size_t j = 0; j < pts.size(); ++j) {
        field.values[j] = std::pow(pts[j].a, -(0.5 + p)) * grid.coeffs[0][j];
    }
    return field;
}

double halfplane_energy(const Spectrum& spec, const WaveletSpec& w,
                        double a_min, double a_max, std::size_t n_scales) {
    if (!(a_min > 0.0) || !(a_max > a_min)) {
        throw std::domain_error("halfplane energy requires 0 < a_min < a_max");
    }
    if (n_scales == 0) {
        throw std::domain_error("halfplane energy requires at least one scale");
    }
    validate_wavelet(w);
    const SampleGrid& g = spec.grid();
    const double h = std::log(a_max / a_min) / static_cast<double>(n_scales);
    double total = 0.0;
    for (std::size_t t = 0; t < n_scales; ++t) {
        const double a =
            a_min * std::exp((static_cast<double>(t) + 0.5) * h);
        std::vector<cplx> tab = detail::wavelet_table(w, g, a);
        detail::conjugate_in_place(tab);
        const std::vector<cplx> row = scale_row(spec, tab, a);
        double b_energy = 0.0;
        for (const cplx& v : row) b_energy += std::norm(v);
        b_energy *= g.dx;
        // db da/a^2 = db du/a on the log-uniform scale grid a = e^u.
        total += h * b_energy / a;
    }
    return total;
}

}  // namespace wsr
