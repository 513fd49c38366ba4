// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

#include "wsr/wavelet.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wsr {

std::string to_string(WaveletKind kind) {
    switch (kind) {
        case WaveletKind::Cauchy: return "cauchy";
        case WaveletKind::Poisson: return "poisson";
        case WaveletKind::HilbertPoisson: return "hpoisson";
        case WaveletKind::Combo: return "combo";
    }
    throw std::invalid_argument("unknown wavelet kind");
}

WaveletKind wavelet_kind_from_string(const std::string& name) {
    if (name == "cauchy") return WaveletKind::Cauchy;
    if (name == "poisson") return WaveletKind::Poisson;
    if (name == "hpoisson") return WaveletKind::HilbertPoisson;
    if (name == "combo") return WaveletKind::Combo;
    throw std::invalid_argument("unknown wavelet kind: " + name);
}

WaveletSpec WaveletSpec::cauchy(double p) {
    WaveletSpec w{WaveletKind::Cauchy, p, 0.0, 0.0};
    validate_wavelet(w);
    return w;
}

WaveletSpec WaveletSpec::poisson(double p) {
    WaveletSpec w{WaveletKind::Poisson, p, 0.0, 0.0};
    validate_wavelet(w);
    return w;
}

WaveletSpec WaveletSpec::hilbert_poisson(double p) {
    WaveletSpec w{WaveletKind::HilbertPoisson, p, 0.0, 0.0};
    validate_wavelet(w);
    return w;
}

WaveletSpec WaveletSpec::combo(double p, double lambda1, double lambda2) {
    WaveletSpec w{WaveletKind::Combo, p, lambda1, lambda2};
    validate_wavelet(w);
    return w;
}

void validate_wavelet(const WaveletSpec& w) {
    if (!(w.p > 0.0) || !std::isfinite(w.p)) {
        throw std::invalid_argument("wavelet order p must be positive and finite");
    }
    if (w.kind == WaveletKind::Combo) {
        if (!std::isfinite(w.lambda1) || !std::isfinite(w.lambda2)) {
            throw std::invalid_argument("combo weights must be finite");
        }
        if (w.lambda1 == 0.0 && w.lambda2 == 0.0) {
            throw std::invalid_argument("combo weights must not both be zero");
        }
    }
}

namespace {

// |xi|^p e^{-|xi|}; exactly 0 at xi = 0 since p > 0.
double poisson_hat(double p, double xi) {
    const double axi = std::abs(xi);
    if (axi == 0.0) return 0.0;
    return std::pow(axi, p) * std::exp(-axi);
}

}  // namespace

cplx fourier_eval(const WaveletSpec& w, double xi) {
    switch (w.kind) {
        case WaveletKind::Cauchy:
            if (xi > 0.0) return cplx(std::pow(xi, w.p) * std::exp(-xi), 0.0);
            return cplx(0.0, 0.0);
        case WaveletKind::Poisson:
            return cplx(poisson_hat(w.p, xi), 0.0);
        case WaveletKind::HilbertPoisson: {
            // -i sgn(xi) |xi|^p e^{-|xi|}
            if (xi == 0.0) return cplx(0.0, 0.0);
            const double s = xi > 0.0 ? 1.0 : -1.0;
            return cplx(0.0, -s * poisson_hat(w.p, xi));
        }
        case WaveletKind::Combo: {
            const double re = w.lambda1 * poisson_hat(w.p, xi);
            double im = 0.0;
            if (xi != 0.0) {
                const double s = xi > 0.0 ? 1.0 : -1.0;
                im = -s * w.lambda2 * poisson_hat(w.p, xi);
            }
            return cplx(re, im);
        }
    }
    throw std::invalid_argument("unknown wavelet kind");
}

bool time_domain_real(const WaveletSpec& w) {
    return w.kind != WaveletKind::Cauchy;
}

double poisson_time(double x) {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double den = 1.0 + 4.0 * pi2 * x * x;
    const double rho = 2.0 / den;
    const double drho = -16.0 * pi2 * x / (den * den);
    return rho + x * drho;
}

double admissibility_constant(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw std::domain_error("admissibility constant requires p > 0");
    }
    // Gamma(2p) / 2^(2p)
    return std::tgamma(2.0 * p) * std::pow(2.0, -2.0 * p);
}

}  // namespace wsr
