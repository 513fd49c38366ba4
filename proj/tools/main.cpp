// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

// Command-line surface: reproducible wavelet sign-retrieval experiments
// with data-only file emission.  Exit codes: 0 success, 2 validation
// error, 3 numerical non-convergence.

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wsr/cwt.hpp"
#include "wsr/frame.hpp"
#include "wsr/io.hpp"
#include "wsr/lattice.hpp"
#include "wsr/retrieve.hpp"
#include "wsr/signal.hpp"
#include "wsr/synth.hpp"
#include "wsr/version.hpp"
#include "wsr/wavelet.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNonConvergence = 3;

double default_beta() { return 4.0 * std::numbers::pi / (5.0 * std::log(2.0)); }

// Shared experiment parameters; flags override JSON config entries,
// which override these defaults.
struct RunConfig {
    double p = 1.0;
    double alpha = 2.0;
    double beta = default_beta();
    long m_min = -4;
    long m_max = 4;
    double b_max = 8.0;
    std::size_t n = 256;
    double dx = 1.0 / 16.0;
    double x0 = -8.0;
    // Signal-model band in frequency units.  Random signals are generated
    // inside it and the reconstruction solves are restricted to it, which
    // keeps them clear of the scales the truncated lattice undersamples.
    double band_lo = 1.5;
    double band_hi = 4.5;
    std::string wavelets = "poisson,hpoisson,combo:1,1";
    unsigned seed = 1;
    std::string signal_path;
    std::string prefix = "wsr_out";
    double cg_tol = 1e-10;
    double sync_tol = 1e-8;
    double delta = 1e-6;
    double tau_rel = 1e-8;
    int threads = 1;
};

// Pull values a flag did not set from the JSON config file.
class ConfigFile {
  public:
    void load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
        try {
            in >> data_;
        } catch (const json::exception& e) {
            throw CLI::ValidationError("--config", e.what());
        }
    }

    template <typename T>
    void merge(const CLI::Option* opt, const char* key, T& value) const {
        if (opt != nullptr && opt->count() > 0) return;
        if (data_.contains(key)) value = data_.at(key).get<T>();
    }

  private:
    json data_;
};

std::vector<wsr::WaveletSpec> parse_wavelets(const std::string& text, double p) {
    std::vector<wsr::WaveletSpec> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (item.rfind("combo:", 0) == 0) {
            const std::string args = item.substr(6);
            const std::size_t sep = args.find(';');
            // accept both "combo:l1;l2" and the two list cells "combo:l1", "l2"
            if (sep != std::string::npos) {
                out.push_back(wsr::WaveletSpec::combo(
                    p, std::stod(args.substr(0, sep)),
                    std::stod(args.substr(sep + 1))));
            } else {
                std::string second;
                if (!std::getline(ss, second, ',')) {
                    throw std::invalid_argument(
                        "combo wavelet needs two weights, e.g. combo:1,1");
                }
                out.push_back(wsr::WaveletSpec::combo(p, std::stod(args),
                                                      std::stod(second)));
            }
        } else {
            const wsr::WaveletKind kind = wsr::wavelet_kind_from_string(item);
            switch (kind) {
                case wsr::WaveletKind::Poisson:
                    out.push_back(wsr::WaveletSpec::poisson(p));
                    break;
                case wsr::WaveletKind::HilbertPoisson:
                    out.push_back(wsr::WaveletSpec::hilbert_poisson(p));
                    break;
                case wsr::WaveletKind::Cauchy:
                    out.push_back(wsr::WaveletSpec::cauchy(p));
                    break;
                case wsr::WaveletKind::Combo:
                    throw std::invalid_argument(
                        "combo wavelet needs weights, e.g. combo:1,1");
            }
        }
    }
    if (out.empty()) throw std::invalid_argument("empty wavelet list");
    return out;
}

/// Measurement vector of a real wavelet in the (P, HP) plane.
std::vector<double> lambda_of(const wsr::WaveletSpec& w) {
    switch (w.kind) {
        case wsr::WaveletKind::Poisson: return {1.0, 0.0};
        case wsr::WaveletKind::HilbertPoisson: return {0.0, 1.0};
        case wsr::WaveletKind::Combo: return {w.lambda1, w.lambda2};
        case wsr::WaveletKind::Cauchy: break;
    }
    throw std::invalid_argument(
        "sign retrieval needs real wavelets (poisson/hpoisson/combo)");
}

wsr::SampleGrid grid_of(const RunConfig& cfg) {
    return wsr::SampleGrid{cfg.n, cfg.dx, cfg.x0};
}

wsr::HyperbolicLattice lattice_of(const RunConfig& cfg) {
    return wsr::HyperbolicLattice(cfg.alpha, cfg.beta, cfg.m_min, cfg.m_max,
                                  cfg.b_max);
}

wsr::GeneratorSpec generator_of(const RunConfig& cfg) {
    wsr::GeneratorSpec gen;
    gen.grid = grid_of(cfg);
    gen.seed = cfg.seed;
    if (cfg.band_hi > cfg.band_lo) {
        gen.bin_lo = std::lround(cfg.band_lo / gen.grid.dxi());
        gen.bin_hi = std::lround(cfg.band_hi / gen.grid.dxi());
    }
    return gen;
}

wsr::Signal load_or_generate(const RunConfig& cfg) {
    if (!cfg.signal_path.empty()) {
        if (cfg.signal_path.size() > 4 &&
            cfg.signal_path.substr(cfg.signal_path.size() - 4) == ".bin") {
            return wsr::read_signal_binary(cfg.signal_path);
        }
        return wsr::read_signal_csv(cfg.signal_path);
    }
    return wsr::random_real_signal(generator_of(cfg));
}

json config_echo(const RunConfig& cfg) {
    return json{{"p", cfg.p},
                {"alpha", cfg.alpha},
                {"beta", cfg.beta},
                {"m_min", cfg.m_min},
                {"m_max", cfg.m_max},
                {"b_max", cfg.b_max},
                {"n", cfg.n},
                {"dx", cfg.dx},
                {"x0", cfg.x0},
                {"band_lo", cfg.band_lo},
                {"band_hi", cfg.band_hi},
                {"wavelets", cfg.wavelets},
                {"seed", cfg.seed},
                {"signal", cfg.signal_path},
                {"prefix", cfg.prefix},
                {"cg_tol", cfg.cg_tol},
                {"sync_tol", cfg.sync_tol},
                {"delta", cfg.delta},
                {"tau_rel", cfg.tau_rel},
                {"threads", cfg.threads}};
}

json base_report(const char* command, const RunConfig& cfg) {
    return json{{"command", command},
                {"version", wsr::version_string},
                {"seed", cfg.seed},
                {"config", config_echo(cfg)}};
}

void emit_report(const json& report, const std::string& path) {
    if (!path.empty()) {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write report: " + path);
        out << report.dump(2) << "\n";
    }
    std::cout << report.dump(2) << std::endl;
}

// Flags shared by the experiment subcommands.
struct CommonFlags {
    CLI::Option* p = nullptr;
    CLI::Option* alpha = nullptr;
    CLI::Option* beta = nullptr;
    CLI::Option* m_min = nullptr;
    CLI::Option* m_max = nullptr;
    CLI::Option* b_max = nullptr;
    CLI::Option* n = nullptr;
    CLI::Option* dx = nullptr;
    CLI::Option* x0 = nullptr;
    CLI::Option* band_lo = nullptr;
    CLI::Option* band_hi = nullptr;
    CLI::Option* wavelets = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* signal = nullptr;
    CLI::Option* prefix = nullptr;
    CLI::Option* config = nullptr;
    CLI::Option* threads = nullptr;
    std::string config_path;
};

CommonFlags add_common(CLI::App* cmd, RunConfig& cfg) {
    CommonFlags f;
    f.p = cmd->add_option("--p", cfg.p, "wavelet order p");
    f.alpha = cmd->add_option("--alpha", cfg.alpha, "lattice dilation alpha");
    f.beta = cmd->add_option("--beta", cfg.beta, "lattice time step beta");
    f.m_min = cmd->add_option("--m-min", cfg.m_min, "smallest scale exponent");
    f.m_max = cmd->add_option("--m-max", cfg.m_max, "largest scale exponent");
    f.b_max = cmd->add_option("--b-max", cfg.b_max, "time window half width");
    f.n = cmd->add_option("--n", cfg.n, "grid length (power of two)");
    f.dx = cmd->add_option("--dx", cfg.dx, "sample spacing");
    f.x0 = cmd->add_option("--x0", cfg.x0, "grid origin");
    f.band_lo = cmd->add_option("--band-lo", cfg.band_lo,
                                "signal band lower edge (0 0 = unrestricted)");
    f.band_hi = cmd->add_option("--band-hi", cfg.band_hi,
                                "signal band upper edge");
    f.wavelets = cmd->add_option("--wavelets", cfg.wavelets,
                                 "comma list: poisson,hpoisson,combo:1,1");
    f.seed = cmd->add_option("--seed", cfg.seed, "generator seed");
    f.signal = cmd->add_option("--signal", cfg.signal_path,
                               "input signal file (.csv or .bin)");
    f.prefix = cmd->add_option("--prefix", cfg.prefix, "output path prefix");
    f.threads = cmd->add_option("--threads", cfg.threads, "worker thread cap");
    f.config = cmd->add_option("--config", f.config_path, "JSON config file");
    return f;
}

void merge_common(const CommonFlags& f, RunConfig& cfg) {
    if (f.config->count() == 0) return;
    ConfigFile file;
    file.load(f.config_path);
    file.merge(f.p, "p", cfg.p);
    file.merge(f.alpha, "alpha", cfg.alpha);
    file.merge(f.beta, "beta", cfg.beta);
    file.merge(f.m_min, "m_min", cfg.m_min);
    file.merge(f.m_max, "m_max", cfg.m_max);
    file.merge(f.b_max, "b_max", cfg.b_max);
    file.merge(f.n, "n", cfg.n);
    file.merge(f.dx, "dx", cfg.dx);
    file.merge(f.x0, "x0", cfg.x0);
    file.merge(f.band_lo, "band_lo", cfg.band_lo);
    file.merge(f.band_hi, "band_hi", cfg.band_hi);
    file.merge(f.wavelets, "wavelets", cfg.wavelets);
    file.merge(f.seed, "seed", cfg.seed);
    file.merge(f.signal, "signal", cfg.signal_path);
    file.merge(f.prefix, "prefix", cfg.prefix);
    file.merge(f.threads, "threads", cfg.threads);
    file.merge(nullptr, "cg_tol", cfg.cg_tol);
    file.merge(nullptr, "sync_tol", cfg.sync_tol);
    file.merge(nullptr, "delta", cfg.delta);
    file.merge(nullptr, "tau_rel", cfg.tau_rel);
}

int cmd_transform(const RunConfig& cfg) {
    const wsr::Signal f = load_or_generate(cfg);
    const std::vector<wsr::WaveletSpec> wavelets =
        parse_wavelets(cfg.wavelets, cfg.p);
    const wsr::HyperbolicLattice lattice = lattice_of(cfg);
    const wsr::CoefficientGrid grid =
        wsr::cwt_lattice(wsr::dft(f), wavelets, lattice);
    const wsr::MagnitudeField mf = wsr::magnitude_field(grid);

    const std::string signal_out = cfg.prefix + "_signal.csv";
    const std::string grid_out = cfg.prefix + "_grid.csv";
    const std::string mag_out = cfg.prefix + "_mag.csv";
    wsr::write_signal_csv(signal_out, f);
    wsr::write_grid_csv(grid_out, grid);
    wsr::write_magnitude_csv(mag_out, mf);

    json report = base_report("transform", cfg);
    report["outputs"] = {signal_out, grid_out, mag_out};
    report["lattice_points"] = lattice.size();
    emit_report(report, "");
    return kExitOk;
}

int cmd_retrieve(const RunConfig& cfg, const std::string& magnitudes,
                 const std::string& truth_path) {
    const wsr::MagnitudeField mf = wsr::read_magnitude_csv(magnitudes);
    const std::vector<wsr::WaveletSpec> wavelets =
        parse_wavelets(cfg.wavelets, cfg.p);
    wsr::MeasurementVectors vecs;
    for (const wsr::WaveletSpec& w : wavelets) {
        vecs.vectors.push_back(lambda_of(w));
    }
    const wsr::FrameSystem sys({wsr::WaveletSpec::poisson(cfg.p),
                                wsr::WaveletSpec::hilbert_poisson(cfg.p)},
                               mf.lattice, grid_of(cfg));
    wsr::RetrieveOptions opts;
    opts.cg_tol = cfg.cg_tol;
    opts.sync_tol = cfg.sync_tol;
    opts.delta = cfg.delta;
    opts.tau_rel = cfg.tau_rel;
    opts.xi_lo = cfg.band_lo;
    opts.xi_hi = cfg.band_hi;
    const wsr::RecoveryResult result = wsr::recover_signal(mf, sys, vecs, opts);

    const std::string rec_out = cfg.prefix + "_recovered.csv";
    const std::string field_out = cfg.prefix + "_signfield.csv";
    const std::string report_out = cfg.prefix + "_report.json";
    wsr::write_signal_csv(rec_out, result.f);
    wsr::write_signfield_csv(field_out, result.field);

    json report = base_report("retrieve", cfg);
    report["magnitudes"] = magnitudes;
    report["outputs"] = {rec_out, field_out, report_out};
    report["quality"] = wsr::quality_to_json(result.report);
    if (!truth_path.empty()) {
        const wsr::Signal truth = wsr::read_signal_csv(truth_path);
        std::vector<double> diff(truth.size()), sum(truth.size());
        double nd = 0.0, ns = 0.0, nt = 0.0;
        for (std::size_t j = 0; j < truth.size(); ++j) {
            const double t = truth.samples()[j].real();
            const double r = result.f.samples()[j].real();
            nd += (r - t) * (r - t);
            ns += (r + t) * (r + t);
            nt += t * t;
        }
        report["relative_error_vs_truth"] =
            nt > 0.0 ? std::sqrt(std::min(nd, ns) / nt) : 0.0;
    }
    emit_report(report, report_out);
    return result.report.sync_converged ? kExitOk : kExitNonConvergence;
}

int cmd_density(const RunConfig& cfg, const std::vector<double>& weights) {
    const wsr::DensityReport rep =
        wsr::density_report(cfg.beta, cfg.alpha, cfg.p, weights);
    json report = base_report("density", cfg);
    report["density"] = wsr::density_to_json(rep);
    emit_report(report, "");
    return kExitOk;
}

int cmd_framebounds(const RunConfig& cfg, int trials) {
    const wsr::FrameSystem sys({wsr::WaveletSpec::poisson(cfg.p),
                                wsr::WaveletSpec::hilbert_poisson(cfg.p)},
                               lattice_of(cfg), grid_of(cfg));
    wsr::FrameBoundsOptions opts;
    opts.seed = cfg.seed;
    opts.xi_lo = cfg.band_lo;
    opts.xi_hi = cfg.band_hi;
    const wsr::FrameBoundsReport rep = wsr::frame_bounds_estimate(sys, trials, opts);
    json report = base_report("framebounds", cfg);
    report["bounds"] = wsr::bounds_to_json(rep);
    report["density"] = wsr::density_to_json(
        wsr::density_report(cfg.beta, cfg.alpha, cfg.p));
    emit_report(report, "");
    return (rep.converged_a && rep.converged_b) ? kExitOk : kExitNonConvergence;
}

int cmd_counterexample(const RunConfig& cfg) {
    wsr::Signal f = [&] {
        if (!cfg.signal_path.empty()) return load_or_generate(cfg);
        return wsr::random_complex_signal(generator_of(cfg));
    }();
    const wsr::Signal g = wsr::conjugate_counterexample(f);
    const std::vector<wsr::WaveletSpec> wavelets =
        parse_wavelets(cfg.wavelets, cfg.p);
    for (const wsr::WaveletSpec& w : wavelets) {
        if (!wsr::time_domain_real(w)) {
            throw std::invalid_argument(
                "the scalogram identity needs real wavelets");
        }
    }
    const wsr::HyperbolicLattice lattice = lattice_of(cfg);
    const wsr::CoefficientGrid gf =
        wsr::cwt_lattice(wsr::dft(f), wavelets, lattice);
    const wsr::CoefficientGrid gg =
        wsr::cwt_lattice(wsr::dft(g), wavelets, lattice);
    double max_gap = 0.0;
    double max_mag = 0.0;
    for (std::size_t i = 0; i < wavelets.size(); ++i) {
        for (std::size_t j = 0; j < lattice.size(); ++j) {
            const double mf = std::abs(gf.coeffs[i][j]);
            const double mg = std::abs(gg.coeffs[i][j]);
            max_gap = std::max(max_gap, std::abs(mf - mg));
            max_mag = std::max(max_mag, mf);
        }
    }
    const double nf = wsr::norm_l2(f);
    const std::string f_out = cfg.prefix + "_f.csv";
    const std::string g_out = cfg.prefix + "_g.csv";
    wsr::write_signal_csv(f_out, f);
    wsr::write_signal_csv(g_out, g);

    json report = base_report("counterexample", cfg);
    report["outputs"] = {f_out, g_out};
    report["max_scalogram_gap"] = max_gap;
    report["max_scalogram_gap_relative"] = max_mag > 0.0 ? max_gap / max_mag : 0.0;
    report["unimodular_distance_relative"] =
        nf > 0.0 ? wsr::unimodular_distance(f, g) / nf : 0.0;
    emit_report(report, "");
    return kExitOk;
}

int cmd_selftest(const RunConfig& cfg) {
    int failures = 0;
    const auto check = [&failures](const char* name, bool ok) {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name << std::endl;
        if (!ok) ++failures;
    };

    const wsr::GeneratorSpec gen = generator_of(cfg);
    const wsr::Signal f = wsr::random_real_signal(gen);
    const wsr::Spectrum spec = wsr::dft(f);

    // Round trip.
    const wsr::Signal back = wsr::idft(spec);
    double rt = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        rt = std::max(rt, std::abs(back.samples()[j] - f.samples()[j]));
    }
    check("dft/idft round trip", rt < 1e-12);

    // Cauchy/Poisson identity at a few points.
    const wsr::WaveletSpec cauchy = wsr::WaveletSpec::cauchy(cfg.p);
    const wsr::WaveletSpec poisson = wsr::WaveletSpec::poisson(cfg.p);
    const wsr::WaveletSpec hp = wsr::WaveletSpec::hilbert_poisson(cfg.p);
    bool identity_ok = true;
    for (double a : {0.5, 1.0, 2.0}) {
        for (double b : {-1.0, 0.0, 0.7}) {
            const wsr::cplx wpsi = wsr::cwt_point(spec, cauchy, b, a);
            const wsr::cplx wp = wsr::cwt_point(spec, poisson, b, a);
            const wsr::cplx whp = wsr::cwt_point(spec, hp, b, a);
            identity_ok = identity_ok &&
                          std::abs(wp.real() - 2.0 * wpsi.real()) < 1e-10 &&
                          std::abs(whp.real() + 2.0 * wpsi.imag()) < 1e-10;
        }
    }
    check("W_P = 2 Re W_psi and W_HP = -2 Im W_psi", identity_ok);

    check("admissibility constant p=1",
          std::abs(wsr::admissibility_constant(1.0) - 0.25) < 1e-12);

    const wsr::DensityReport dens =
        wsr::density_report(cfg.beta, cfg.alpha, cfg.p, {2.0 + 4.0 * cfg.p});
    check("default density admits sign retrieval",
          dens.sign_retrieval_unique.satisfied);

    // End-to-end recovery on one draw.
    const std::vector<wsr::WaveletSpec> triple =
        parse_wavelets("poisson,hpoisson,combo:1,1", cfg.p);
    const wsr::HyperbolicLattice lattice = lattice_of(cfg);
    const wsr::CoefficientGrid grid = wsr::cwt_lattice(spec, triple, lattice);
    wsr::MeasurementVectors vecs;
    for (const auto& w : triple) vecs.vectors.push_back(lambda_of(w));
    const wsr::FrameSystem sys({poisson, hp}, lattice, gen.grid);
    wsr::RetrieveOptions ropts;
    ropts.xi_lo = cfg.band_lo;
    ropts.xi_hi = cfg.band_hi;
    const wsr::RecoveryResult rec =
        wsr::recover_signal(wsr::magnitude_field(grid), sys, vecs, ropts);
    double nd = 0.0, ns = 0.0, nt = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double t = f.samples()[j].real();
        const double r = rec.f.samples()[j].real();
        nd += (r - t) * (r - t);
        ns += (r + t) * (r + t);
        nt += t * t;
    }
    const double err = std::sqrt(std::min(nd, ns) / nt);
    check("end-to-end recovery up to sign", err <= 1e-3);

    std::cout << (failures == 0 ? "selftest OK" : "selftest FAILED")
              << std::endl;
    return failures == 0 ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wavelet sign retrieval without bandlimiting"};
    app.require_subcommand(1);
    app.set_version_flag("--version", wsr::version_string);

    RunConfig cfg;

    CLI::App* transform = app.add_subcommand(
        "transform", "wavelet coefficients and magnitudes on a lattice");
    CommonFlags tf = add_common(transform, cfg);

    CLI::App* retrieve = app.add_subcommand(
        "retrieve", "recover a real signal up to sign from magnitudes");
    CommonFlags rf = add_common(retrieve, cfg);
    std::string magnitudes;
    std::string truth;
    retrieve->add_option("--magnitudes", magnitudes, "magnitude CSV input")
        ->required();
    retrieve->add_option("--truth", truth, "ground-truth signal CSV");

    CLI::App* density =
        app.add_subcommand("density", "lattice density predicates");
    CommonFlags df = add_common(density, cfg);
    std::vector<double> weights{6.0};
    density->add_option("--bergman-w", weights, "Bergman space weights");

    CLI::App* bounds =
        app.add_subcommand("framebounds", "empirical frame bounds");
    CommonFlags bf = add_common(bounds, cfg);
    int trials = 5;
    bounds->add_option("--trials", trials, "random probe starts");

    CLI::App* counter = app.add_subcommand(
        "counterexample", "complex signal pair with equal scalograms");
    CommonFlags xf = add_common(counter, cfg);

    CLI::App* selftest = app.add_subcommand("selftest", "quick sanity battery");
    CommonFlags sf = add_common(selftest, cfg);

    CLI11_PARSE(app, argc, argv);

    try {
        if (transform->parsed()) {
            merge_common(tf, cfg);
            return cmd_transform(cfg);
        }
        if (retrieve->parsed()) {
            merge_common(rf, cfg);
            return cmd_retrieve(cfg, magnitudes, truth);
        }
        if (density->parsed()) {
            merge_common(df, cfg);
            return cmd_density(cfg, weights);
        }
        if (bounds->parsed()) {
            merge_common(bf, cfg);
            return cmd_framebounds(cfg, trials);
        }
        if (counter->parsed()) {
            merge_common(xf, cfg);
            return cmd_counterexample(cfg);
        }
        if (selftest->parsed()) {
            merge_common(sf, cfg);
            return cmd_selftest(cfg);
        }
    } catch (const wsr::ConvergenceError& e) {
        std::cerr << "non-convergence: " << e.what() << std::endl;
        return kExitNonConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitValidation;
    }
    return kExitValidation;
}
