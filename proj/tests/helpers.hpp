// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

// Shared test utilities: independent numerical oracles (quadrature,
// enumeration, orthogonalization rank) and random input families.

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "wsr/retrieve.hpp"
#include "wsr/signal.hpp"
#include "wsr/synth.hpp"

namespace wsr_test {

/// Adaptive Simpson quadrature on [a, b].
inline double simpson_slice(const std::function<double(double)>& f, double a,
                            double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double fa, double fm, double fb,
                               double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_slice(f, a, m, fa, flm, fm);
    const double right = simpson_slice(f, m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12) {
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    return adaptive_simpson(f, a, b, fa, fm, fb,
                            simpson_slice(f, a, b, fa, fm, fb), tol, 48);
}

/// Generator for the default experiment geometry with a given seed.
inline wsr::GeneratorSpec default_gen(unsigned seed) {
    wsr::GeneratorSpec gen;
    gen.seed = seed;
    return gen;
}

inline double max_abs(const std::vector<wsr::cplx>& v) {
    double m = 0.0;
    for (const wsr::cplx& x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double max_diff(const std::vector<wsr::cplx>& a,
                       const std::vector<wsr::cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

/// Relative L2 error up to one global sign, real signals.
inline double rel_error_up_to_sign(const wsr::Signal& got,
                                   const wsr::Signal& truth) {
    double nd = 0.0, ns = 0.0, nt = 0.0;
    for (std::size_t j = 0; j < truth.size(); ++j) {
        const double t = truth.samples()[j].real();
        const double r = got.samples()[j].real();
        nd += (r - t) * (r - t);
        ns += (r + t) * (r + t);
        nt += t * t;
    }
    return std::sqrt(std::min(nd, ns) / nt);
}

/// Rank by modified Gram-Schmidt, independent of the library's
/// Gaussian-elimination path.
inline std::size_t mgs_rank(std::vector<std::vector<double>> rows,
                            double tol = 1e-10) {
    std::size_t rank = 0;
    std::vector<std::vector<double>> basis;
    for (auto& r : rows) {
        double scale = 0.0;
        for (double v : r) scale += v * v;
        scale = std::sqrt(scale);
        if (scale == 0.0) continue;
        for (const auto& q : basis) {
            double proj = 0.0;
            for (std::size_t i = 0; i < r.size(); ++i) proj += r[i] * q[i];
            for (std::size_t i = 0; i < r.size(); ++i) r[i] -= proj * q[i];
        }
        double rem = 0.0;
        for (double v : r) rem += v * v;
        rem = std::sqrt(rem);
        if (rem > tol * scale) {
            for (double& v : r) v /= rem;
            basis.push_back(r);
            ++rank;
        }
    }
    return rank;
}

/// Brute-force complement property using the orthogonalization rank.
inline bool cp_oracle(const wsr::MeasurementVectors& vecs, std::size_t M) {
    const std::size_t N = vecs.vectors.size();
    for (unsigned long mask = 0; mask < (1ul << N); ++mask) {
        std::vector<std::vector<double>> in;
        std::vector<std::vector<double>> out;
        for (std::size_t i = 0; i < N; ++i) {
            if (mask & (1ul << i)) {
                in.push_back(vecs.vectors[i]);
            } else {
                out.push_back(vecs.vectors[i]);
            }
        }
        if (mgs_rank(in) != M && mgs_rank(out) != M) return false;
    }
    return true;
}

/// Enumeration oracle for pointwise sign retrieval: try all four sign
/// patterns of (m1, m2) and keep the solutions whose third magnitude
/// matches; returns the distinct solutions up to global sign.
inline std::vector<std::array<double, 2>> enumerate_solutions(
    const std::array<double, 3>& m, const wsr::MeasurementVectors& vecs,
    double tol = 1e-9) {
    const auto& l1 = vecs.vectors[0];
    const auto& l2 = vecs.vectors[1];
    const auto& l3 = vecs.vectors[2];
    const double det = l1[0] * l2[1] - l1[1] * l2[0];
    std::vector<std::array<double, 2>> found;
    for (int s1 = -1; s1 <= 1; s1 += 2) {
        for (int s2 = -1; s2 <= 1; s2 += 2) {
            const double r1 = s1 * m[0];
            const double r2 = s2 * m[1];
            const std::array<double, 2> v{(l2[1] * r1 - l1[1] * r2) / det,
                                          (-l2[0] * r1 + l1[0] * r2) / det};
            if (std::abs(std::abs(v[0] * l3[0] + v[1] * l3[1]) - m[2]) > tol) {
                continue;
            }
            bool dup = false;
            for (const auto& u : found) {
                if ((std::hypot(v[0] - u[0], v[1] - u[1]) < tol) ||
                    (std::hypot(v[0] + u[0], v[1] + u[1]) < tol)) {
                    dup = true;
                    break;
                }
            }
            if (!dup) found.push_back(v);
        }
    }
    return found;
}

}  // namespace wsr_test
