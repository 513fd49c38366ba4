// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

#include "wsr/io.hpp"

#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace wsr {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path, bool binary) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path, bool binary) {
    std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

json read_header(std::istream& in, const std::string& path) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
        throw std::runtime_error("missing '# {json}' header line in " + path);
    }
    try {
        return json::parse(line.substr(2));
    } catch (const json::exception& e) {
        throw std::runtime_error("bad header in " + path + ": " + e.what());
    }
}

void expect_columns(std::istream& in, const std::string& expected,
                    const std::string& path) {
    std::string line;
    if (!std::getline(in, line) || line != expected) {
        throw std::runtime_error("expected column header '" + expected +
                                 "' in " + path);
    }
}

std::vector<double> parse_row(const std::string& line, std::size_t count,
                              const std::string& path) {
    std::vector<double> values;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            values.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw std::runtime_error("bad numeric cell '" + cell + "' in " + path);
        }
    }
    if (values.size() != count) {
        throw std::runtime_error("wrong column count in " + path);
    }
    return values;
}

}  // namespace

std::string format_double(double value) {
    std::ostringstream out;
    out << std::setprecision(17) << value;
    return out.str();
}

json grid_to_json(const SampleGrid& grid) {
    return json{{"n", grid.n}, {"dx", grid.dx}, {"x0", grid.x0}};
}

SampleGrid grid_from_json(const json& j) {
    SampleGrid grid{j.at("n").get<std::size_t>(), j.at("dx").get<double>(),
                    j.at("x0").get<double>()};
    validate_grid(grid);
    return grid;
}

json wavelet_to_json(const WaveletSpec& w) {
    return json{{"kind", to_string(w.kind)},
                {"p", w.p},
                {"lambda", {w.lambda1, w.lambda2}}};
}

WaveletSpec wavelet_from_json(const json& j) {
    WaveletSpec w;
    w.kind = wavelet_kind_from_string(j.at("kind").get<std::string>());
    w.p = j.at("p").get<double>();
    if (j.contains("lambda")) {
        w.lambda1 = j.at("lambda").at(0).get<double>();
        w.lambda2 = j.at("lambda").at(1).get<double>();
    }
    validate_wavelet(w);
    return w;
}

json lattice_to_json(const HyperbolicLattice& lattice) {
    return json{{"alpha", lattice.alpha()},
                {"beta", lattice.beta()},
                {"m_min", lattice.m_min()},
                {"m_max", lattice.m_max()},
                {"b_max", lattice.b_max()}};
}

HyperbolicLattice lattice_from_json(const json& j) {
    return HyperbolicLattice(
        j.at("alpha").get<double>(), j.at("beta").get<double>(),
        j.at("m_min").get<long>(), j.at("m_max").get<long>(),
        j.at("b_max").get<double>());
}

namespace {

json gate_to_json(const DensityGate& gate) {
    return json{{"threshold", gate.threshold},
                {"slack", gate.slack},
                {"boundary", gate.boundary},
                {"satisfied", gate.satisfied}};
}

}  // namespace

json density_to_json(const DensityReport& rep) {
    json bergman = json::array();
    for (const BergmanGate& bg : rep.bergman_sampling) {
        json entry = gate_to_json(bg.gate);
        entry["w"] = bg.w;
        bergman.push_back(entry);
    }
    return json{{"beta", rep.beta},
                {"alpha", rep.alpha},
                {"p", rep.p},
                {"d", rep.d},
                {"poisson_pair_frame", gate_to_json(rep.poisson_pair_frame)},
                {"sign_retrieval_unique", gate_to_json(rep.sign_retrieval_unique)},
                {"bergman_sampling", bergman}};
}

json bounds_to_json(const FrameBoundsReport& rep) {
    return json{{"a_est", rep.a_est},
                {"b_est", rep.b_est},
                {"ratio", rep.b_est > 0.0 ? rep.a_est / rep.b_est : 0.0},
                {"residual_a", rep.residual_a},
                {"residual_b", rep.residual_b},
                {"iterations_a", rep.iterations_a},
                {"iterations_b", rep.iterations_b},
                {"converged_a", rep.converged_a},
                {"converged_b", rep.converged_b},
                {"trials", rep.trials}};
}

json quality_to_json(const QualityReport& rep) {
    return json{{"resolved", rep.resolved},
                {"deferred", rep.deferred},
                {"ambiguous", rep.ambiguous},
                {"sync_converged", rep.sync_converged},
                {"sync_iterations", rep.sync_iterations},
                {"sync_residual", rep.sync_residual},
                {"range_residual", rep.range_residual},
                {"magnitude_residual", rep.magnitude_residual},
                {"density_warning", rep.density_warning},
                {"contract_void", rep.contract_void},
                {"warnings", rep.warnings}};
}

void write_signal_csv(const std::string& path, const Signal& s) {
    std::ofstream out = open_out(path, false);
    json header = grid_to_json(s.grid());
    header["real"] = s.is_real();
    out << "# " << header.dump() << "\n";
    out << "x,re,im\n";
    for (std::size_t j = 0; j < s.size(); ++j) {
        out << format_double(s.grid().x(j)) << ','
            << format_double(s.samples()[j].real()) << ','
            << format_double(s.samples()[j].imag()) << "\n";
    }
}

Signal read_signal_csv(const std::string& path) {
    std::ifstream in = open_in(path, false);
    const json header = read_header(in, path);
    const SampleGrid grid = grid_from_json(header);
    const bool real = header.value("real", false);
    expect_columns(in, "x,re,im", path);
    std::vector<cplx> samples;
    samples.reserve(grid.n);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<double> row = parse_row(line, 3, path);
        samples.emplace_back(row[1], row[2]);
    }
    if (samples.size() != grid.n) {
        throw std::runtime_error("row count does not match grid in " + path);
    }
    return Signal(grid, std::move(samples), real);
}

void write_signal_binary(const std::string& path, const Signal& s) {
    std::ofstream out = open_out(path, true);
    json header = grid_to_json(s.grid());
    header["real"] = s.is_real();
    header["format"] = "wsr-signal-v1";
    const std::string head = "# " + header.dump() + "\n";
    out.write(head.data(), static_cast<std::streamsize>(head.size()));
    std::vector<double> payload(2 * s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
        payload[2 * j] = s.samples()[j].real();
        payload[2 * j + 1] = s.samples()[j].imag();
    }
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size() * sizeof(double)));
}

Signal read_signal_binary(const std::string& path) {
    std::ifstream in = open_in(path, true);
    const json header = read_header(in, path);
    if (header.value("format", "") != "wsr-signal-v1") {
        throw std::runtime_error("unknown binary signal format in " + path);
    }
    const SampleGrid grid = grid_from_json(header);
    const bool real = header.value("real", false);
    std::vector<double> payload(2 * grid.n);
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(payload.size() * sizeof(double)));
    if (static_cast<std::size_t>(in.gcount()) !=
        payload.size() * sizeof(double)) {
        throw std::runtime_error("truncated binary signal in " + path);
    }
    std::vector<cplx> samples(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) {
        samples[j] = cplx(payload[2 * j], payload[2 * j + 1]);
    }
    return Signal(grid, std::move(samples), real);
}

void write_grid_csv(const std::string& path, const CoefficientGrid& grid) {
    std::ofstream out = open_out(path, false);
    json header{{"lattice", lattice_to_json(grid.lattice)}};
    json wl = json::array();
    for (const WaveletSpec& w : grid.wavelets) wl.push_back(wavelet_to_json(w));
    header["wavelets"] = wl;
    out << "# " << header.dump() << "\n";
    out << "m,n,b,a";
    for (std::size_t i = 0; i < grid.wavelets.size(); ++i) {
        out << ",w" << i << "_re,w" << i << "_im";
    }
    out << "\n";
    const auto& pts = grid.lattice.points();
    for (std::size_t j = 0; j < pts.size(); ++j) {
        out << pts[j].m << ',' << pts[j].n << ',' << format_double(pts[j].b)
            << ',' << format_double(pts[j].a);
        for (std::size_t i = 0; i < grid.wavelets.size(); ++i) {
            out << ',' << format_double(grid.coeffs[i][j].real()) << ','
                << format_double(grid.coeffs[i][j].imag());
        }
        out << "\n";
    }
}

void write_magnitude_csv(const std::string& path, const MagnitudeField& mf) {
    std::ofstream out = open_out(path, false);
    const json header{{"lattice", lattice_to_json(mf.lattice)}};
    out << "# " << header.dump() << "\n";
    out << "m,n,b,a,m1,m2,m3\n";
    const auto& pts = mf.lattice.points();
    for (std::size_t j = 0; j < pts.size(); ++j) {
        out << pts[j].m << ',' << pts[j].n << ',' << format_double(pts[j].b)
            << ',' << format_double(pts[j].a) << ','
            << format_double(mf.triples[j][0]) << ','
            << format_double(mf.triples[j][1]) << ','
            << format_double(mf.triples[j][2]) << "\n";
    }
}

MagnitudeField read_magnitude_csv(const std::string& path) {
    std::ifstream in = open_in(path, false);
    const json header = read_header(in, path);
    MagnitudeField mf{lattice_from_json(header.at("lattice")), {}};
    expect_columns(in, "m,n,b,a,m1,m2,m3", path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<double> row = parse_row(line, 7, path);
        mf.triples.push_back({row[4], row[5], row[6]});
    }
    if (mf.triples.size() != mf.lattice.size()) {
        throw std::runtime_error("row count does not match lattice in " + path);
    }
    return mf;
}

void write_signfield_csv(const std::string& path, const SignField& field) {
    std::ofstream out = open_out(path, false);
    const json header{{"lattice", lattice_to_json(field.lattice)}};
    out << "# " << header.dump() << "\n";
    out << "m,n,b,a,v1,v2,status,sign\n";
    const auto& pts = field.lattice.points();
    for (std::size_t j = 0; j < pts.size(); ++j) {
        out << pts[j].m << ',' << pts[j].n << ',' << format_double(pts[j].b)
            << ',' << format_double(pts[j].a) << ','
            << format_double(field.points[j].v[0]) << ','
            << format_double(field.points[j].v[1]) << ','
            << to_string(field.points[j].status) << ','
            << field.sign[j] << "\n";
    }
}

}  // namespace wsr
