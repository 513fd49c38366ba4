// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

#pragma once

#include <string>

#include "wsr/signal.hpp"

namespace wsr {

enum class WaveletKind { Cauchy, Poisson, HilbertPoisson, Combo };

std::string to_string(WaveletKind kind);
WaveletKind wavelet_kind_from_string(const std::string& name);

/// Wavelet given by its Fourier-domain evaluator and order p > 0.
/// Combo is the real linear combination lambda1*P_p + lambda2*HP_p,
/// (lambda1, lambda2) != (0, 0).
struct WaveletSpec {
    WaveletKind kind = WaveletKind::Poisson;
    double p = 1.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;

    static WaveletSpec cauchy(double p);
    static WaveletSpec poisson(double p);
    static WaveletSpec hilbert_poisson(double p);
    static WaveletSpec combo(double p, double lambda1, double lambda2);
};

/// Throws std::invalid_argument on p <= 0 or an all-zero Combo pair.
void validate_wavelet(const WaveletSpec& w);

/// Fourier transform of the wavelet at frequency xi:
///   Cauchy:         xi^p e^{-xi} for xi > 0, exactly 0 otherwise
///   Poisson:        |xi|^p e^{-|xi|}
///   HilbertPoisson: -i sgn(xi) |xi|^p e^{-|xi|}
///   Combo:          lambda1 * Poisson + lambda2 * HilbertPoisson
cplx fourier_eval(const WaveletSpec& w, double xi);

/// True when the time-domain wavelet is real valued (every kind except
/// Cauchy, whose spectrum lives on xi > 0 only).
bool time_domain_real(const WaveletSpec& w);

/// Closed form for the order-1 Poisson wavelet, P(x) = rho(x) + x rho'(x)
/// with rho(x) = 2/(1+4 pi^2 x^2).
double poisson_time(double x);

/// Admissibility constant of the order-p Cauchy wavelet,
/// integral_0^inf xi^(2p-1) e^(-2 xi) dxi = Gamma(2p) / 2^(2p).
double admissibility_constant(double p);

}  // namespace wsr
