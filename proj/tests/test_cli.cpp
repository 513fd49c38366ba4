// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

// End-to-end runs of the command-line tool: golden transform outputs,
// magnitude-only recovery from files, density predicates, exit codes,
// and gauge invariance at the file level.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <doctest.h>
#include <json.hpp>

#include "helpers.hpp"
#include "wsr/io.hpp"
#include "wsr/signal.hpp"

using nlohmann::json;
using wsr::Signal;

TEST_SUITE_BEGIN("cli");

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

// Run the built binary with the given arguments, capturing stdout.
CliResult run_cli(const std::string& args) {
    const std::string out_path = "/tmp/wsr_cli_stdout.txt";
    const std::string cmd = std::string(WSR_CLI_PATH) + " " + args + " > " +
                            out_path + " 2>/tmp/wsr_cli_stderr.txt";
    const int rc = std::system(cmd.c_str());
    CliResult res;
    res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    res.out = ss.str();
    return res;
}

json parse_stdout(const CliResult& res) { return json::parse(res.out); }

double rel_err_up_to_sign_files(const std::string& got_path,
                                const std::string& truth_path) {
    return wsr_test::rel_error_up_to_sign(wsr::read_signal_csv(got_path),
                                          wsr::read_signal_csv(truth_path));
}

const std::string kGolden = std::string(WSR_TEST_DIR) + "/golden";

}  // namespace

TEST_CASE("transform reproduces the frozen outputs") {
    const CliResult res =
        run_cli("transform --seed 1 --prefix /tmp/wsr_cli_t1");
    REQUIRE(res.exit_code == 0);
    const json rep = parse_stdout(res);
    CHECK(rep.at("command") == "transform");
    CHECK(rep.at("lattice_points").get<std::size_t>() == 143);

    const Signal sig = wsr::read_signal_csv("/tmp/wsr_cli_t1_signal.csv");
    const Signal gold = wsr::read_signal_csv(kGolden + "/default_signal.csv");
    REQUIRE(sig.grid() == gold.grid());
    CHECK(wsr_test::max_diff(sig.samples(), gold.samples()) <= 1e-10);

    const wsr::MagnitudeField mag =
        wsr::read_magnitude_csv("/tmp/wsr_cli_t1_mag.csv");
    const wsr::MagnitudeField gmag =
        wsr::read_magnitude_csv(kGolden + "/default_mag.csv");
    REQUIRE(mag.lattice == gmag.lattice);
    double worst = 0.0;
    for (std::size_t j = 0; j < mag.triples.size(); ++j) {
        for (int i = 0; i < 3; ++i) {
            worst = std::max(worst,
                             std::abs(mag.triples[j][i] - gmag.triples[j][i]));
        }
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("retrieve recovers the golden signal from its magnitudes") {
    const CliResult res = run_cli(
        "retrieve --magnitudes " + kGolden + "/default_mag.csv --truth " +
        kGolden + "/default_signal.csv --prefix /tmp/wsr_cli_r1");
    REQUIRE(res.exit_code == 0);
    const json rep = parse_stdout(res);
    CHECK(rep.at("quality").at("sync_converged").get<bool>());
    CHECK(rep.at("quality").at("resolved").get<std::size_t>() >= 140);
    CHECK(rep.at("relative_error_vs_truth").get<double>() <= 1e-3);
    CHECK(rel_err_up_to_sign_files("/tmp/wsr_cli_r1_recovered.csv",
                                   kGolden + "/default_signal.csv") <= 1e-3);
    // The report file mirrors stdout.
    std::ifstream repf("/tmp/wsr_cli_r1_report.json");
    REQUIRE(repf.good());
    const json reread = json::parse(repf);
    CHECK(reread.at("quality") == rep.at("quality"));
}

TEST_CASE("recovery is invariant under negating the input signal") {
    REQUIRE(run_cli("transform --seed 6 --prefix /tmp/wsr_cli_g").exit_code ==
            0);
    // Negate the signal file and transform again: same magnitudes.
    const Signal f = wsr::read_signal_csv("/tmp/wsr_cli_g_signal.csv");
    std::vector<wsr::cplx> neg(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) neg[j] = -f.samples()[j];
    wsr::write_signal_csv("/tmp/wsr_cli_g_neg.csv",
                          Signal(f.grid(), std::move(neg), f.is_real()));
    REQUIRE(run_cli("transform --signal /tmp/wsr_cli_g_neg.csv --prefix "
                    "/tmp/wsr_cli_gn")
                .exit_code == 0);
    const wsr::MagnitudeField m1 =
        wsr::read_magnitude_csv("/tmp/wsr_cli_g_mag.csv");
    const wsr::MagnitudeField m2 =
        wsr::read_magnitude_csv("/tmp/wsr_cli_gn_mag.csv");
    double gap = 0.0;
    double peak = 0.0;
    for (std::size_t j = 0; j < m1.triples.size(); ++j) {
        for (int i = 0; i < 3; ++i) {
            gap = std::max(gap,
                           std::abs(m1.triples[j][i] - m2.triples[j][i]));
            peak = std::max(peak, m1.triples[j][i]);
        }
    }
    CHECK(gap <= 1e-12 * peak);

    // Either gauge of the truth is recovered equally well.
    const CliResult r1 = run_cli(
        "retrieve --magnitudes /tmp/wsr_cli_g_mag.csv --truth "
        "/tmp/wsr_cli_g_signal.csv --prefix /tmp/wsr_cli_gr1");
    const CliResult r2 = run_cli(
        "retrieve --magnitudes /tmp/wsr_cli_g_mag.csv --truth "
        "/tmp/wsr_cli_g_neg.csv --prefix /tmp/wsr_cli_gr2");
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);
    CHECK(parse_stdout(r1).at("relative_error_vs_truth").get<double>() <=
          1e-3);
    CHECK(parse_stdout(r2).at("relative_error_vs_truth").get<double>() <=
          1e-3);
}

TEST_CASE("density reports the boundary configuration") {
    const CliResult res = run_cli("density --bergman-w 6");
    REQUIRE(res.exit_code == 0);
    const json d = parse_stdout(res).at("density");
    CHECK(d.at("d").get<double>() ==
          doctest::Approx(4.0 * std::numbers::pi / 5.0).epsilon(1e-12));
    CHECK(d.at("poisson_pair_frame").at("satisfied").get<bool>());
    CHECK_FALSE(d.at("poisson_pair_frame").at("boundary").get<bool>());
    CHECK(d.at("sign_retrieval_unique").at("satisfied").get<bool>());
    CHECK(d.at("sign_retrieval_unique").at("boundary").get<bool>());
    REQUIRE(d.at("bergman_sampling").size() == 1);
    CHECK(d.at("bergman_sampling")[0].at("w").get<double>() == 6.0);
    CHECK(d.at("bergman_sampling")[0].at("boundary").get<bool>());
    CHECK_FALSE(d.at("bergman_sampling")[0].at("satisfied").get<bool>());
}

TEST_CASE("framebounds emits ordered estimates") {
    const CliResult res = run_cli("framebounds --trials 2");
    // Power iterations may stop short of the tolerance; both outcomes
    // carry the report.
    REQUIRE((res.exit_code == 0 || res.exit_code == 3));
    const json b = parse_stdout(res).at("bounds");
    CHECK(b.at("a_est").get<double>() > 0.0);
    CHECK(b.at("b_est").get<double>() >= b.at("a_est").get<double>());
    const double ratio = b.at("ratio").get<double>();
    CHECK(ratio > 0.0);
    CHECK(ratio <= 1.0);
}

TEST_CASE("counterexample reports equal scalograms for distant signals") {
    const CliResult res =
        run_cli("counterexample --seed 2 --prefix /tmp/wsr_cli_cx");
    REQUIRE(res.exit_code == 0);
    const json rep = parse_stdout(res);
    CHECK(rep.at("max_scalogram_gap_relative").get<double>() <= 1e-10);
    CHECK(rep.at("unimodular_distance_relative").get<double>() > 0.1);
    const Signal f = wsr::read_signal_csv("/tmp/wsr_cli_cx_f.csv");
    const Signal g = wsr::read_signal_csv("/tmp/wsr_cli_cx_g.csv");
    CHECK_FALSE(f.is_real());
    CHECK_FALSE(g.is_real());
}

TEST_CASE("selftest passes on the default configuration") {
    const CliResult res = run_cli("selftest");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("selftest OK") != std::string::npos);
}

TEST_CASE("ablation runs void the contract but still report") {
    const CliResult res = run_cli(
        "retrieve --wavelets poisson,hpoisson --magnitudes " + kGolden +
        "/default_mag.csv --prefix /tmp/wsr_cli_ab");
    // Without a third magnitude there is no recovery guarantee; the run
    // may also fail to synchronize, which is the non-convergence code.
    REQUIRE((res.exit_code == 0 || res.exit_code == 3));
    const json rep = parse_stdout(res);
    CHECK(rep.at("quality").at("contract_void").get<bool>());
    CHECK(!rep.at("quality").at("warnings").empty());
}

TEST_CASE("validation failures exit with code 2") {
    CHECK(run_cli("transform --n 100").exit_code == 2);  // not a power of two
    CHECK(run_cli("transform --signal /tmp/wsr_cli_no_such_file.csv")
              .exit_code == 2);
    CHECK(run_cli("retrieve --magnitudes /tmp/wsr_cli_no_such_file.csv")
              .exit_code == 2);
    CHECK(run_cli("density --p 0").exit_code == 2);
}

TEST_CASE("numerical non-convergence exits with code 3") {
    std::ofstream cfg("/tmp/wsr_cli_cfg.json");
    cfg << R"({"cg_tol": 1e-30})" << "\n";
    cfg.close();
    const CliResult res = run_cli(
        "retrieve --config /tmp/wsr_cli_cfg.json --magnitudes " + kGolden +
        "/default_mag.csv --prefix /tmp/wsr_cli_nc");
    CHECK(res.exit_code == 3);
}

TEST_CASE("argument errors are reported by the parser") {
    CHECK(run_cli("retrieve").exit_code != 0);       // missing --magnitudes
    CHECK(run_cli("bogus-subcommand").exit_code != 0);
    CHECK(run_cli("").exit_code != 0);               // subcommand required
    CHECK(run_cli("--version").exit_code == 0);
}

TEST_SUITE_END();
