// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "wsr/signal.hpp"

using wsr::cplx;
using wsr::SampleGrid;
using wsr::Signal;
using wsr::Spectrum;

namespace {

const SampleGrid kGrid{256, 1.0 / 16.0, -8.0};

Signal cosine_signal(double freq) {
    std::vector<double> v(kGrid.n);
    for (std::size_t j = 0; j < kGrid.n; ++j) {
        v[j] = std::cos(2.0 * std::numbers::pi * freq * kGrid.x(j));
    }
    return Signal::from_real(kGrid, v);
}

}  // namespace

TEST_SUITE_BEGIN("signal");

TEST_CASE("grid validation rejects bad parameters") {
    CHECK_THROWS_AS(wsr::validate_grid({0, 0.1, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(wsr::validate_grid({192, 0.1, 0.0}),
                    std::invalid_argument);  // not a power of two
    CHECK_THROWS_AS(wsr::validate_grid({256, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(wsr::validate_grid({256, -1.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(wsr::validate_grid({256, 0.1, std::nan("")}),
                    std::invalid_argument);
    CHECK_NOTHROW(wsr::validate_grid(kGrid));
}

TEST_CASE("grid geometry accessors") {
    CHECK(kGrid.span() == doctest::Approx(16.0));
    CHECK(kGrid.dxi() == doctest::Approx(1.0 / 16.0));
    CHECK(kGrid.zero_bin() == 128);
    CHECK(kGrid.x(0) == doctest::Approx(-8.0));
    CHECK(kGrid.xi(128) == doctest::Approx(0.0));
    CHECK(kGrid.xi(144) == doctest::Approx(1.0));
    CHECK(kGrid.xi(112) == doctest::Approx(-1.0));
}

TEST_CASE("dft of a grid-aligned cosine concentrates on two bins") {
    // cos(2 pi x) has spectral mass 1/2 at xi = +-1; against the measure
    // dx the transform sums to span/2 = 8 on each of the two bins.
    const Spectrum F = wsr::dft(cosine_signal(1.0));
    for (std::size_t i = 0; i < kGrid.n; ++i) {
        const double expect = (i == 144 || i == 112) ? 8.0 : 0.0;
        CHECK(std::abs(F.coefficients()[i] - expect) < 1e-10);
    }
}

TEST_CASE("idft inverts dft to machine accuracy") {
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss;
    std::vector<cplx> v(kGrid.n);
    for (auto& x : v) x = cplx(gauss(rng), gauss(rng));
    const Signal f = Signal::from_complex(kGrid, v);
    const Signal g = wsr::idft(wsr::dft(f));
    CHECK(wsr_test::max_diff(f.samples(), g.samples()) < 1e-12);
}

TEST_CASE("Plancherel identity holds exactly for the discrete pair") {
    const wsr::GeneratorSpec gen = wsr_test::default_gen(11);
    const Signal f = wsr::random_real_signal(gen);
    const Spectrum F = wsr::dft(f);
    CHECK(wsr::norm_l2(F) ==
          doctest::Approx(wsr::norm_l2(f)).epsilon(1e-12));
}

TEST_CASE("real signals have conjugate-symmetric spectra") {
    const Signal f = wsr::random_real_signal(wsr_test::default_gen(3));
    const Spectrum F = wsr::dft(f);
    const std::size_t z = kGrid.zero_bin();
    for (std::size_t m = 1; m < z; ++m) {
        CHECK(std::abs(F.coefficients()[z + m] -
                       std::conj(F.coefficients()[z - m])) < 1e-12);
    }
    CHECK(std::abs(F.coefficients()[z].imag()) < 1e-12);
}

TEST_CASE("Hilbert transform maps cosine to sine") {
    const Signal h = wsr::hilbert(cosine_signal(1.0));
    for (std::size_t j = 0; j < kGrid.n; ++j) {
        const double want = std::sin(2.0 * std::numbers::pi * kGrid.x(j));
        CHECK(h.samples()[j].real() == doctest::Approx(want).epsilon(1e-10));
        CHECK(std::abs(h.samples()[j].imag()) < 1e-12);
    }
}

TEST_CASE("Hilbert transform annihilates constants") {
    const Signal h =
        wsr::hilbert(Signal::from_real(kGrid, std::vector<double>(kGrid.n, 3.5)));
    CHECK(wsr::norm_l2(h) < 1e-12);
}

TEST_CASE("Hilbert transform is unitary and an anti-involution on band signals") {
    // Mean-free, Nyquist-free inputs: H preserves energy and H(H f) = -f.
    const Signal f = wsr::random_real_signal(wsr_test::default_gen(5));
    const Signal h = wsr::hilbert(f);
    CHECK(wsr::norm_l2(h) == doctest::Approx(wsr::norm_l2(f)).epsilon(1e-12));
    const Signal hh = wsr::hilbert(h);
    for (std::size_t j = 0; j < kGrid.n; ++j) {
        CHECK(std::abs(hh.samples()[j] + f.samples()[j]) < 1e-10);
    }
}

TEST_CASE("analytic representation doubles positive frequencies only") {
    const Signal f = wsr::random_real_signal(wsr_test::default_gen(9));
    const Signal fp = wsr::analytic_representation(f);
    CHECK_FALSE(fp.is_real());

    const Spectrum F = wsr::dft(f);
    const Spectrum Fp = wsr::dft(fp);
    const std::size_t z = kGrid.zero_bin();
    for (std::size_t i = 0; i < kGrid.n; ++i) {
        if (i > z) {
            CHECK(std::abs(Fp.coefficients()[i] - 2.0 * F.coefficients()[i]) <
                  1e-12);
        } else {
            CHECK(std::abs(Fp.coefficients()[i]) < 1e-12);
        }
    }
}

TEST_CASE("analytic representation satisfies norm(f) = norm(f+)/sqrt(2)") {
    const Signal f = wsr::random_real_signal(wsr_test::default_gen(13));
    const Signal fp = wsr::analytic_representation(f);
    CHECK(wsr::norm_l2(f) ==
          doctest::Approx(wsr::norm_l2(fp) / std::sqrt(2.0)).epsilon(1e-12));
    // Re f+ = f for mean-free, Nyquist-free signals.
    for (std::size_t j = 0; j < kGrid.n; ++j) {
        CHECK(std::abs(fp.samples()[j].real() - f.samples()[j].real()) < 1e-10);
    }
}

TEST_CASE("analytic representation rejects complex input") {
    std::vector<cplx> v(kGrid.n, cplx(0.0, 1.0));
    const Signal g = Signal::from_complex(kGrid, v);
    CHECK_THROWS_AS(wsr::analytic_representation(g), std::domain_error);
}

TEST_CASE("inner product requires matching grids") {
    const Signal f = wsr::random_real_signal(wsr_test::default_gen(1));
    wsr::GeneratorSpec other = wsr_test::default_gen(1);
    other.grid.dx = 1.0 / 8.0;
    other.grid.x0 = -16.0;
    const Signal g = wsr::random_real_signal(other);
    CHECK_THROWS_AS(wsr::inner(f, g), std::invalid_argument);
}

TEST_CASE("signal constructor polices real-valuedness") {
    std::vector<cplx> v(kGrid.n, cplx(1.0, 0.5));
    CHECK_THROWS_AS(Signal(kGrid, v, /*real_valued=*/true),
                    std::invalid_argument);
    const Signal g = Signal::from_complex(kGrid, v);
    CHECK_FALSE(g.is_real());
    std::vector<cplx> w(kGrid.n, cplx(1.0, 0.0));
    CHECK(Signal::from_complex(kGrid, w).is_real());
}

TEST_SUITE_END();
