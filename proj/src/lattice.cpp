// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

#include "wsr/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace wsr {

namespace {

void validate_params(double alpha, double beta, long m_min, long m_max,
                     double b_max) {
    if (!(alpha > 1.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("lattice alpha must satisfy alpha > 1");
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("lattice beta must be positive");
    }
    if (m_min > m_max) {
        throw std::invalid_argument("lattice m_range is empty");
    }
    if (!(b_max > 0.0) || !std::isfinite(b_max)) {
        throw std::invalid_argument("lattice b_max must be positive");
    }
}

long n_max_at_scale(double alpha, double beta, long m, double b_max) {
    const double step = std::pow(alpha, static_cast<double>(m)) * beta;
    return static_cast<long>(std::floor(b_max / step));
}

}  // namespace

HyperbolicLattice::HyperbolicLattice(double alpha, double beta, long m_min,
                                     long m_max, double b_max)
    : alpha_(alpha), beta_(beta), m_min_(m_min), m_max_(m_max), b_max_(b_max) {
    validate_params(alpha, beta, m_min, m_max, b_max);
    for (long m = m_min; m <= m_max; ++m) {
        const double a = std::pow(alpha, static_cast<double>(m));
        const long n_max = n_max_at_scale(alpha, beta, m, b_max);
        for (long n = -n_max; n <= n_max; ++n) {
            points_.push_back(LatticePoint{a * beta * static_cast<double>(n), a, m, n});
        }
    }
}

double HyperbolicLattice::density() const { return beta_ * std::log(alpha_); }

std::size_t lattice_point_count(double alpha, double beta, long m_min,
                                long m_max, double b_max) {
    validate_params(alpha, beta, m_min, m_max, b_max);
    std::size_t count = 0;
    for (long m = m_min; m <= m_max; ++m) {
        count += static_cast<std::size_t>(2 * n_max_at_scale(alpha, beta, m, b_max) + 1);
    }
    return count;
}

std::pair<long, long> default_m_range(double alpha, const SampleGrid& grid) {
    validate_grid(grid);
    if (!(alpha > 1.0)) {
        throw std::invalid_argument("lattice alpha must satisfy alpha > 1");
    }
    const double la = std::log(alpha);
    const double lo = std::log(4.0 * grid.dx) / la;
    const double hi = std::log(static_cast<double>(grid.n) * grid.dx / 4.0) / la;
    // Nudge before rounding so exact integer edges stay exact.
    const long m_min = static_cast<long>(std::floor(lo + 1e-9));
    const long m_max = static_cast<long>(std::ceil(hi - 1e-9));
    return {m_min, m_max};
}

double default_b_max(const SampleGrid& grid) {
    validate_grid(grid);
    return grid.span() / 2.0;
}

}  // namespace wsr
