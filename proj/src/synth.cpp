// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

#include "wsr/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace wsr {

void validate_generator(const GeneratorSpec& spec) {
    validate_grid(spec.grid);
    const long half = static_cast<long>(spec.grid.n) / 2;
    if (spec.bin_lo < 1 || spec.bin_hi >= half || spec.bin_lo > spec.bin_hi) {
        throw std::invalid_argument(
            "generator band must satisfy 1 <= bin_lo <= bin_hi < n/2");
    }
    if (spec.min_bumps < 1 || spec.max_bumps < spec.min_bumps) {
        throw std::invalid_argument("generator bump counts out of range");
    }
    if (!(spec.sigma_lo > 0.0) || spec.sigma_hi < spec.sigma_lo) {
        throw std::invalid_argument("generator bump widths out of range");
    }
    if (!(spec.tau_max >= 0.0)) {
        throw std::invalid_argument("generator tau_max must be nonnegative");
    }
}

namespace {

/// Sum of random Gaussian bumps evaluated on the slots [bin_lo, bin_hi]
/// of the positive-frequency side; everything else stays exactly zero.
std::vector<cplx> bump_band(const GeneratorSpec& spec, std::mt19937& rng) {
    const SampleGrid& g = spec.grid;
    std::uniform_int_distribution<int> n_bumps(spec.min_bumps, spec.max_bumps);
    std::uniform_real_distribution<double> amp(0.5, 1.5);
    std::uniform_real_distribution<double> center(
        static_cast<double>(spec.bin_lo) * g.dxi(),
        static_cast<double>(spec.bin_hi) * g.dxi());
    std::uniform_real_distribution<double> width(spec.sigma_lo, spec.sigma_hi);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> shift(-spec.tau_max, spec.tau_max);

    std::vector<cplx> band(static_cast<std::size_t>(spec.bin_hi - spec.bin_lo + 1),
                           cplx(0.0, 0.0));
    const int bumps = n_bumps(rng);
    for (int r = 0; r < bumps; ++r) {
        const double a = amp(rng);
        const double xi_c = center(rng);
        const double sigma = width(rng);
        const double theta = phase(rng);
        const double tau = shift(rng);
        for (long m = spec.bin_lo; m <= spec.bin_hi; ++m) {
            const double xi = static_cast<double>(m) * g.dxi();
            const double envelope =
                a * std::exp(-(xi - xi_c) * (xi - xi_c) / (2.0 * sigma * sigma));
            const double arg = theta - 2.0 * std::numbers::pi * tau * xi;
            band[static_cast<std::size_t>(m - spec.bin_lo)] +=
                envelope * std::polar(1.0, arg);
        }
    }
    return band;
}

Signal finish(const SampleGrid& g, std::vector<cplx> coeff) {
    Signal s = idft(Spectrum(g, std::move(coeff)));
    const double norm = norm_l2(s);
    if (norm == 0.0) return s;
    std::vector<cplx> scaled = s.samples();
    for (cplx& v : scaled) v /= norm;
    return Signal(s.grid(), std::move(scaled), s.is_real());
}

}  // namespace

Signal random_real_signal(const GeneratorSpec& spec) {
    validate_generator(spec);
    std::mt19937 rng(spec.seed);
    const SampleGrid& g = spec.grid;
    const std::vector<cplx> band = bump_band(spec, rng);
    std::vector<cplx> coeff(g.n, cplx(0.0, 0.0));
    const long half = static_cast<long>(g.n) / 2;
    for (long m = spec.bin_lo; m <= spec.bin_hi; ++m) {
        const cplx value = band[static_cast<std::size_t>(m - spec.bin_lo)];
        coeff[static_cast<std::size_t>(half + m)] = value;
        coeff[static_cast<std::size_t>(half - m)] = std::conj(value);
    }
    return finish(g, std::move(coeff));
}

Signal random_hardy_signal(const GeneratorSpec& spec) {
    validate_generator(spec);
    std::mt19937 rng(spec.seed);
    const SampleGrid& g = spec.grid;
    const std::vector<cplx> band = bump_band(spec, rng);
    std::vector<cplx> coeff(g.n, cplx(0.0, 0.0));
    const long half = static_cast<long>(g.n) / 2;
    for (long m = spec.bin_lo; m <= spec.bin_hi; ++m) {
        coeff[static_cast<std::size_t>(half + m)] =
            band[static_cast<std::size_t>(m - spec.bin_lo)];
    }
    return finish(g, std::move(coeff));
}

Signal random_complex_signal(const GeneratorSpec& spec) {
    validate_generator(spec);
    std::mt19937 rng(spec.seed);
    const SampleGrid& g = spec.grid;
    const std::vector<cplx> pos = bump_band(spec, rng);
    const std::vector<cplx> neg = bump_band(spec, rng);
    std::vector<cplx> coeff(g.n, cplx(0.0, 0.0));
    const long half = static_cast<long>(g.n) / 2;
    for (long m = spec.bin_lo; m <= spec.bin_hi; ++m) {
        coeff[static_cast<std::size_t>(half + m)] =
            pos[static_cast<std::size_t>(m - spec.bin_lo)];
        coeff[static_cast<std::size_t>(half - m)] =
            neg[static_cast<std::size_t>(m - spec.bin_lo)];
    }
    return finish(g, std::move(coeff));
}

}  // namespace wsr
