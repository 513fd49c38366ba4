// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

#pragma once

#include <string>

#include <json.hpp>

#include "wsr/cwt.hpp"
#include "wsr/frame.hpp"
#include "wsr/lattice.hpp"
#include "wsr/retrieve.hpp"
#include "wsr/signal.hpp"
#include "wsr/wavelet.hpp"

// File formats.  CSV files carry a first line "# {json}" describing the
// object (grid geometry, lattice parameters, wavelets), then a column
// header, then data rows with 17 significant digits.  The binary signal
// format is the same JSON header line followed by interleaved
// little-endian float64 re/im pairs.

namespace wsr {

nlohmann::json grid_to_json(const SampleGrid& grid);
SampleGrid grid_from_json(const nlohmann::json& j);

nlohmann::json wavelet_to_json(const WaveletSpec& w);
WaveletSpec wavelet_from_json(const nlohmann::json& j);

nlohmann::json lattice_to_json(const HyperbolicLattice& lattice);
HyperbolicLattice lattice_from_json(const nlohmann::json& j);

nlohmann::json density_to_json(const DensityReport& rep);
nlohmann::json bounds_to_json(const FrameBoundsReport& rep);
nlohmann::json quality_to_json(const QualityReport& rep);

/// 17 significant digits; round-trips any finite double.
std::string format_double(double value);

void write_signal_csv(const std::string& path, const Signal& s);
Signal read_signal_csv(const std::string& path);

void write_signal_binary(const std::string& path, const Signal& s);
Signal read_signal_binary(const std::string& path);

void write_grid_csv(const std::string& path, const CoefficientGrid& grid);

void write_magnitude_csv(const std::string& path, const MagnitudeField& mf);
MagnitudeField read_magnitude_csv(const std::string& path);

void write_signfield_csv(const std::string& path, const SignField& field);

}  // namespace wsr
