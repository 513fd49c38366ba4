// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "wsr/frame.hpp"
#include "wsr/synth.hpp"

using wsr::cplx;
using wsr::FrameSystem;
using wsr::HyperbolicLattice;
using wsr::SampleGrid;
using wsr::Signal;
using wsr::WaveletSpec;

namespace {

constexpr double kPi = std::numbers::pi;

const SampleGrid kGrid{256, 1.0 / 16.0, -8.0};

HyperbolicLattice default_lattice() {
    return HyperbolicLattice(2.0, 4.0 * kPi / (5.0 * std::log(2.0)), -4, 4,
                             8.0);
}

FrameSystem pair_system() {
    return FrameSystem(
        {WaveletSpec::poisson(1.0), WaveletSpec::hilbert_poisson(1.0)},
        default_lattice(), kGrid);
}

std::vector<double> random_coeffs(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<double> c(n);
    for (double& x : c) x = gauss(rng);
    return c;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double rel_l2_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num / den);
}

}  // namespace

TEST_SUITE_BEGIN("frame");

TEST_CASE("frame systems require time-domain-real wavelets") {
    CHECK_THROWS_AS(FrameSystem({WaveletSpec::cauchy(1.0)}, default_lattice(),
                                kGrid),
                    std::invalid_argument);
    CHECK_THROWS_AS(FrameSystem({}, default_lattice(), kGrid),
                    std::invalid_argument);
    CHECK_NOTHROW(pair_system());
}

TEST_CASE("analysis polices signal geometry and realness") {
    const FrameSystem sys = pair_system();
    wsr::GeneratorSpec other = wsr_test::default_gen(1);
    other.grid = SampleGrid{512, 1.0 / 16.0, -16.0};
    CHECK_THROWS_AS(wsr::analysis(wsr::random_real_signal(other), sys),
                    std::domain_error);
    const Signal cplx_sig = wsr::random_complex_signal(wsr_test::default_gen(1));
    CHECK_THROWS_AS(wsr::analysis(cplx_sig, sys), std::domain_error);
}

TEST_CASE("analysis reproduces the lattice transform, wavelet-major") {
    const Signal f = wsr::random_real_signal(wsr_test::default_gen(51));
    const FrameSystem sys = pair_system();
    const std::vector<double> c = wsr::analysis(f, sys);
    REQUIRE(c.size() == sys.coeff_count());

    const auto grid =
        wsr::cwt_lattice(wsr::dft(f), sys.wavelets(), sys.lattice());
    const std::size_t npts = sys.point_count();
    double peak = 0.0;
    for (const auto& row : grid.coeffs) {
        peak = std::max(peak, wsr_test::max_abs(row));
    }
    for (std::size_t i = 0; i < sys.wavelet_count(); ++i) {
        for (std::size_t j = 0; j < npts; ++j) {
            CHECK(std::abs(c[i * npts + j] - grid.coeffs[i][j].real()) <=
                  1e-12 * peak);
        }
    }
}

TEST_CASE("analysis is linear") {
    const Signal f = wsr::random_real_signal(wsr_test::default_gen(3));
    const Signal g = wsr::random_real_signal(wsr_test::default_gen(4));
    const FrameSystem sys = pair_system();
    std::vector<double> mix(kGrid.n);
    std::vector<double> fv(kGrid.n), gv(kGrid.n);
    for (std::size_t j = 0; j < kGrid.n; ++j) {
        fv[j] = f.samples()[j].real();
        gv[j] = g.samples()[j].real();
        mix[j] = 2.0 * fv[j] - 0.5 * gv[j];
    }
    const auto cf = wsr::analysis(f, sys);
    const auto cg = wsr::analysis(g, sys);
    const auto cm = wsr::analysis(Signal::from_real(kGrid, mix), sys);
    for (std::size_t k = 0; k < cm.size(); ++k) {
        CHECK(cm[k] ==
              doctest::Approx(2.0 * cf[k] - 0.5 * cg[k]).epsilon(1e-10));
    }
}

TEST_CASE("synthesis is the adjoint of analysis") {
    const FrameSystem sys = pair_system();
    std::mt19937 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const Signal f =
            wsr::random_real_signal(wsr_test::default_gen(100 + trial));
        const auto c = random_coeffs(sys.coeff_count(), 200 + trial);
        const double lhs = dot(wsr::analysis(f, sys), c);
        const double rhs = wsr::inner(f, wsr::synthesis(c, sys)).real();
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
}

TEST_CASE("a unit coefficient synthesizes the sampled wavelet atom") {
    // Pick the lattice point (b, a) = (0, 1); the Poisson atom there is
    // P(x) itself.  Periodization of the x^{-2} tail plus truncation of
    // the sampled spectrum at the Nyquist edge bound the error.
    const FrameSystem sys = pair_system();
    const auto& pts = sys.lattice().points();
    std::size_t j0 = pts.size();
    for (std::size_t j = 0; j < pts.size(); ++j) {
        if (pts[j].m == 0 && pts[j].n == 0) j0 = j;
    }
    REQUIRE(j0 < pts.size());
    std::vector<double> c(sys.coeff_count(), 0.0);
    c[j0] = 1.0;  // wavelet 0 = Poisson
    const Signal atom = wsr::synthesis(c, sys);
    CHECK(atom.is_real());
    for (std::size_t j = 0; j < kGrid.n; ++j) {
        CHECK(std::abs(atom.samples()[j].real() -
                       wsr::poisson_time(kGrid.x(j))) < 2e-2);
    }
}

TEST_CASE("frame operator is symmetric and positive semidefinite") {
    const FrameSystem sys = pair_system();
    const Signal f = wsr::random_real_signal(wsr_test::default_gen(61));
    const Signal g = wsr::random_real_signal(wsr_test::default_gen(62));
    const Signal Sf = wsr::frame_apply(f, sys);
    const Signal Sg = wsr::frame_apply(g, sys);
    const double fg = wsr::inner(Sf, g).real();
    const double gf = wsr::inner(f, Sg).real();
    CHECK(fg == doctest::Approx(gf).epsilon(1e-10));

    const double quad = wsr::inner(Sf, f).real();
    const auto c = wsr::analysis(f, sys);
    CHECK(quad == doctest::Approx(dot(c, c)).epsilon(1e-10));
    CHECK(quad > 0.0);
}

TEST_CASE("pair coefficient energy equals 4x the Cauchy scalogram energy") {
    // W_P^2 + W_HP^2 = 4 |W_psi|^2 pointwise on the lattice.
    const Signal f = wsr::random_real_signal(wsr_test::default_gen(67));
    const FrameSystem sys = pair_system();
    const auto c = wsr::analysis(f, sys);
    const auto cauchy = wsr::cwt_lattice(
        wsr::dft(f), {WaveletSpec::cauchy(1.0)}, sys.lattice());
    double quad = 0.0;
    for (const cplx& w : cauchy.coeffs[0]) {
        quad += 4.0 * std::norm(w);
    }
    CHECK(dot(c, c) == doctest::Approx(quad).epsilon(1e-8));
}

// The reconstruction tests solve on the generator band [1.5, 4.5]: the
// truncated lattice keeps only a couple of translates at the coarsest
// scales, so frequencies below the band are rank-starved and the
// unrestricted normal equations are ill-posed on this window.
TEST_CASE("dual-frame reconstruction recovers band signals") {
    const FrameSystem sys = pair_system();
    for (unsigned seed : {5u, 6u, 7u}) {
        const Signal f = wsr::random_real_signal(wsr_test::default_gen(seed));
        const auto c = wsr::analysis(f, sys);
        const Signal r = wsr::reconstruct(c, sys, 1e-10, 500, nullptr, 1.5, 4.5);
        double err = 0.0;
        for (std::size_t j = 0; j < kGrid.n; ++j) {
            err = std::max(err,
                           std::abs(r.samples()[j] - f.samples()[j]));
        }
        CHECK(err < 1e-6);
    }
}

TEST_CASE("reconstruction is linear and warm starts do not change it") {
    const FrameSystem sys = pair_system();
    const Signal f = wsr::random_real_signal(wsr_test::default_gen(8));
    const Signal g = wsr::random_real_signal(wsr_test::default_gen(9));
    auto cf = wsr::analysis(f, sys);
    const auto cg = wsr::analysis(g, sys);
    std::vector<double> mix(cf.size());
    for (std::size_t k = 0; k < cf.size(); ++k) {
        mix[k] = 0.75 * cf[k] + 1.5 * cg[k];
    }
    const Signal rf = wsr::reconstruct(cf, sys, 1e-10, 500, nullptr, 1.5, 4.5);
    const Signal rg = wsr::reconstruct(cg, sys, 1e-10, 500, nullptr, 1.5, 4.5);
    const Signal rm = wsr::reconstruct(mix, sys, 1e-10, 500, nullptr, 1.5, 4.5);
    for (std::size_t j = 0; j < kGrid.n; ++j) {
        const cplx want = 0.75 * rf.samples()[j] + 1.5 * rg.samples()[j];
        CHECK(std::abs(rm.samples()[j] - want) < 1e-7);
    }
    const Signal warm = wsr::reconstruct(cf, sys, 1e-10, 500, &g, 1.5, 4.5);
    for (std::size_t j = 0; j < kGrid.n; ++j) {
        CHECK(std::abs(warm.samples()[j] - rf.samples()[j]) < 1e-7);
    }
}

TEST_CASE("zero coefficients reconstruct to the zero signal") {
    const FrameSystem sys = pair_system();
    const Signal r =
        wsr::reconstruct(std::vector<double>(sys.coeff_count(), 0.0), sys);
    CHECK(wsr::norm_l2(r) == 0.0);
}

TEST_CASE("range projection fixes analysis coefficients and is idempotent") {
    const FrameSystem sys = pair_system();
    const Signal f = wsr::random_real_signal(wsr_test::default_gen(71));
    const auto c = wsr::analysis(f, sys);
    const auto pc = wsr::range_projection(c, sys, 1e-10, 500, 1.5, 4.5);
    CHECK(rel_l2_diff(pc, c) < 1e-8);

    auto noisy = random_coeffs(sys.coeff_count(), 303);
    const auto p1 = wsr::range_projection(noisy, sys, 1e-10, 500, 1.5, 4.5);
    const auto p2 = wsr::range_projection(p1, sys, 1e-10, 500, 1.5, 4.5);
    CHECK(rel_l2_diff(p2, p1) < 1e-6);
    CHECK(std::sqrt(dot(p1, p1)) <= std::sqrt(dot(noisy, noisy)) * (1.0 + 1e-10));
}

TEST_CASE("reconstruct reports non-convergence with a residual trace") {
    const FrameSystem sys = pair_system();
    const auto c = random_coeffs(sys.coeff_count(), 404);
    try {
        (void)wsr::reconstruct(c, sys, 1e-14, 1);
        FAIL("expected ConvergenceError");
    } catch (const wsr::ConvergenceError& e) {
        CHECK_FALSE(e.residual_history().empty());
    }
}

TEST_CASE("frame bound estimates are ordered, positive, converged") {
    const FrameSystem sys = pair_system();
    wsr::FrameBoundsOptions opts;
    opts.max_iter = 300;
    const auto rep = wsr::frame_bounds_estimate(sys, 3, opts);
    CHECK(rep.trials == 3);
    CHECK(rep.b_est > 0.0);
    CHECK(rep.a_est > 0.0);
    CHECK(rep.a_est <= rep.b_est);
    CHECK(rep.converged_b);
    CHECK(rep.residual_b < 1e-4);
    CHECK(rep.iterations_b > 0);
}

TEST_CASE("band-restricted probes cannot lower the bottom Rayleigh quotient") {
    const FrameSystem sys = pair_system();
    wsr::FrameBoundsOptions full;
    full.max_iter = 300;
    wsr::FrameBoundsOptions band = full;
    band.xi_lo = 1.5;
    band.xi_hi = 4.5;
    const auto rep_full = wsr::frame_bounds_estimate(sys, 2, full);
    const auto rep_band = wsr::frame_bounds_estimate(sys, 2, band);
    CHECK(rep_band.a_est >= 0.9 * rep_full.a_est);
    CHECK(rep_band.a_est > 0.0);
}

TEST_SUITE_END();
