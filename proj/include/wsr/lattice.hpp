// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

#pragma once

#include <cstddef>
#include <vector>

#include "wsr/signal.hpp"

namespace wsr {

/// One hyperbolic lattice point (b, a) = (alpha^m beta n, alpha^m).
struct LatticePoint {
    double b = 0.0;
    double a = 1.0;
    long m = 0;
    long n = 0;
};

/// Truncated point set {(alpha^m beta n, alpha^m)} with m in [m_min, m_max]
/// and |b| <= b_max.  Points are generated sorted by (m, n) and are
/// distinct by construction.
class HyperbolicLattice {
  public:
    HyperbolicLattice(double alpha, double beta, long m_min, long m_max,
                      double b_max);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    long m_min() const { return m_min_; }
    long m_max() const { return m_max_; }
    double b_max() const { return b_max_; }
    const std::vector<LatticePoint>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }

    /// beta * ln(alpha), the lattice density parameter.
    double density() const;

    /// Parameter equality; the point set is a function of the parameters.
    bool operator==(const HyperbolicLattice& other) const {
        return alpha_ == other.alpha_ && beta_ == other.beta_ &&
               m_min_ == other.m_min_ && m_max_ == other.m_max_ &&
               b_max_ == other.b_max_;
    }

  private:
    double alpha_;
    double beta_;
    long m_min_;
    long m_max_;
    double b_max_;
    std::vector<LatticePoint> points_;
};

/// Number of points the truncation window admits:
/// sum over m of 2*floor(b_max / (alpha^m beta)) + 1.
std::size_t lattice_point_count(double alpha, double beta, long m_min,
                                long m_max, double b_max);

/// Scale range covering [4*dx, n*dx/4]:
/// m_min = floor(log_alpha(4 dx)), m_max = ceil(log_alpha(n dx / 4)).
std::pair<long, long> default_m_range(double alpha, const SampleGrid& grid);

/// Half the grid span; beyond it the periodized transform repeats.
double default_b_max(const SampleGrid& grid);

}  // namespace wsr
