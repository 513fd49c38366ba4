// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

#pragma once

#include "wsr/signal.hpp"

namespace wsr {

/// Random band-limited test-signal family: a handful of Gaussian bumps
/// in the spectrum, restricted to the DFT slots [bin_lo, bin_hi] on the
/// positive-frequency side (indices m in spectrum layout), with random
/// amplitudes, phases and time offsets.  Signals are unit-norm,
/// mean-free, Nyquist-free and exactly band-limited, so the transform
/// identities hold at full floating-point accuracy; the Gaussian
/// envelopes keep them concentrated well inside the grid window.
struct GeneratorSpec {
    SampleGrid grid{256, 1.0 / 16.0, -8.0};
    long bin_lo = 24;
    long bin_hi = 72;
    int min_bumps = 2;
    int max_bumps = 4;
    double sigma_lo = 0.20;
    double sigma_hi = 0.35;
    double tau_max = 2.0;
    unsigned seed = 1;
};

void validate_generator(const GeneratorSpec& spec);

/// Real signal: bumps on the positive band, conjugate-mirrored.
Signal random_real_signal(const GeneratorSpec& spec);

/// Hardy-space signal: the same construction without the mirror, so the
/// spectrum lives on positive frequencies only.
Signal random_hardy_signal(const GeneratorSpec& spec);

/// Generic complex signal: independent bumps on the positive and
/// negative bands, no conjugate symmetry.
Signal random_complex_signal(const GeneratorSpec& spec);

}  // namespace wsr
