// End-to-end command tests driven through run_cli with captured streams,
// working in a throwaway directory under the system temp path.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "twinlab/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = twinlab::run_cli(args, out, err);
    return CliResult{code, out.str(), err.str()};
}

fs::path work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "twinlab_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::ifstream in(p);
    REQUIRE(in.good());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(cell);
        rows.push_back(std::move(row));
    }
    return rows;
}

// a small but statistically solid source: 10 detected-ish photons per pixel
const std::vector<std::string> kSmallSource = {
    "--set", "grid=64",           "--set", "mu=20",
    "--set", "temporal_modes=2",  "--set", "coherence_fwhm_px=2",
};

}  // namespace

TEST_CASE("help requests succeed and name the subcommands") {
    const CliResult r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("simulate") != std::string::npos);
    CHECK(r.out.find("analyze") != std::string::npos);
    CHECK(r.out.find("sweep") != std::string::npos);
    CHECK(r.out.find("imaging") != std::string::npos);
    CHECK(run({"simulate", "--help"}).code == 0);
}

TEST_CASE("a missing subcommand is a usage error") {
    const CliResult r = run({});
    CHECK(r.code == 2);
    CHECK(r.err.find("error: usage:") != std::string::npos);
    CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("simulate writes a reproducible ensemble") {
    const fs::path a = work_dir() / "sim_a";
    const fs::path b = work_dir() / "sim_b";
    std::vector<std::string> cmd = {"simulate", "--seed", "5",
                                    "--shots", "3", "--out", a.string()};
    cmd.insert(cmd.end(), kSmallSource.begin(), kSmallSource.end());
    const CliResult ra = run(cmd);
    CHECK(ra.code == 0);
    CHECK(ra.out.find("wrote 3 shot pairs") != std::string::npos);

    cmd[6] = b.string();
    REQUIRE(run(cmd).code == 0);

    const std::vector<std::string> names = {
        "effective.cfg", "truth.csv",      "signal_0000.tbf",
        "idler_0000.tbf", "signal_0002.tbf", "idler_0002.tbf"};
    for (const auto& n : names) {
        CAPTURE(n);
        REQUIRE(fs::exists(a / n));
        CHECK(slurp(a / n) == slurp(b / n));
    }
    CHECK_FALSE(fs::exists(a / "signal_0003.tbf"));
    CHECK_FALSE(fs::exists(a / "background_signal_0000.tbf"));

    SUBCASE("the emitted config reproduces the ensemble byte for byte") {
        const fs::path c = work_dir() / "sim_c";
        const CliResult rc = run({"simulate", "--config",
                                  (a / "effective.cfg").string(), "--out",
                                  c.string()});
        REQUIRE(rc.code == 0);
        CHECK(slurp(c / "signal_0002.tbf") == slurp(a / "signal_0002.tbf"));
        CHECK(slurp(c / "idler_0001.tbf") == slurp(a / "idler_0001.tbf"));
        CHECK(slurp(c / "truth.csv") == slurp(a / "truth.csv"));
    }

    SUBCASE("another seed changes the data") {
        const fs::path d = work_dir() / "sim_d";
        cmd[2] = "6";
        cmd[6] = d.string();
        REQUIRE(run(cmd).code == 0);
        CHECK(slurp(d / "signal_0000.tbf") != slurp(a / "signal_0000.tbf"));
    }
}

TEST_CASE("analyze finds the noiseless correlation dip at zero") {
    const fs::path dir = work_dir() / "lossless";
    std::vector<std::string> cmd = {"simulate", "--seed", "9", "--shots", "4",
                                    "--out", dir.string()};
    cmd.insert(cmd.end(), kSmallSource.begin(), kSmallSource.end());
    REQUIRE(run(cmd).code == 0);

    const CliResult r =
        run({"analyze", "--in", dir.string(), "--bin", "8"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("sigma_min=0 ") != std::string::npos);
    CHECK(r.out.find("bin=8") != std::string::npos);

    const auto report = read_csv(dir / "report.csv");
    REQUIRE(report.size() == 5);  // header + 4 shots
    CHECK(report[0][5] == "sigma");
    for (std::size_t k = 1; k < report.size(); ++k) {
        CHECK(std::stod(report[k][5]) == 0.0);        // sigma
        CHECK(report[k][6].empty());                  // no background given
        CHECK(std::stod(report[k][3]) > 1.5);         // thermal signal Fano
    }

    const auto map = read_csv(dir / "map.csv");
    CHECK(map.size() == 1 + 5 * 5);  // header + (2*window+1)^2 entries

    SUBCASE("re-analysis is pure") {
        const std::string before = slurp(dir / "report.csv");
        REQUIRE(run({"analyze", "--in", dir.string(), "--bin", "8"}).code ==
                0);
        CHECK(slurp(dir / "report.csv") == before);
    }
    SUBCASE("centroid refinement is accepted") {
        CHECK(run({"analyze", "--in", dir.string(), "--bin", "8",
                   "--center-method", "centroid"}).code == 0);
    }
}

TEST_CASE("analyze reports background-corrected statistics when available") {
    const fs::path dir = work_dir() / "with_bg";
    // wide grid: the corrected estimator subtracts two measured variances
    // and needs a decent superpixel count to stay positive shot by shot
    const std::vector<std::string> cmd = {
        "simulate", "--seed", "21", "--shots", "6", "--out", dir.string(),
        "--set", "eta=0.8", "--set", "background_mean=2",
        "--set", "grid=128", "--set", "mu=20",
        "--set", "temporal_modes=2", "--set", "coherence_fwhm_px=2"};
    REQUIRE(run(cmd).code == 0);
    REQUIRE(fs::exists(dir / "background_signal_0000.tbf"));
    REQUIRE(fs::exists(dir / "background_idler_0005.tbf"));

    REQUIRE(run({"analyze", "--in", dir.string(), "--bin", "8"}).code == 0);
    const auto report = read_csv(dir / "report.csv");
    REQUIRE(report.size() == 7);
    for (std::size_t k = 1; k < report.size(); ++k) {
        REQUIRE_FALSE(report[k][6].empty());
        const double raw = std::stod(report[k][5]);
        const double corrected = std::stod(report[k][6]);
        CHECK(corrected < raw);
        CHECK(corrected > 0.0);
    }
}

TEST_CASE("sweep tracks the balanced-loss law over eta") {
    const fs::path dir = work_dir() / "sweep_eta";
    const CliResult r = run({
        "sweep", "--variable", "eta", "--values", "0.4,0.8",
        "--seed", "33", "--shots", "12", "--out", dir.string(),
        "--set", "analysis_bin=8", "--set", "grid=128", "--set", "mu=20",
        "--set", "temporal_modes=2", "--set", "coherence_fwhm_px=2"});
    REQUIRE(r.code == 0);

    const auto rows = read_csv(dir / "sweep.csv");
    REQUIRE(rows.size() == 3);
    CHECK(rows[0][0] == "variable");
    CHECK(rows[1][0] == "eta");
    CHECK(rows[1][1] == "0.4");
    CHECK(std::stod(rows[1][2]) == doctest::Approx(0.6).epsilon(0.15));
    CHECK(std::stod(rows[2][2]) == doctest::Approx(0.2).epsilon(0.35));
    CHECK(std::stod(rows[1][6]) == 12);
    // the sigma estimate carries a finite spread over shots
    CHECK(std::stod(rows[1][3]) > 0.0);
}

TEST_CASE("sweep over the analysis bin shows deeper correlation at larger "
          "bins") {
    // bins inside the 8 px coherence cell pair only a (b/c)^2 fraction,
    // so sigma falls from 1 - 0.8/4 at bin 4 to 1 - 0.8 at bin 8
    const fs::path dir = work_dir() / "sweep_bin";
    const CliResult r = run({
        "sweep", "--variable", "analysis_bin", "--values", "4,8",
        "--seed", "44", "--shots", "10", "--out", dir.string(),
        "--set", "grid=128", "--set", "mu=20", "--set", "temporal_modes=2",
        "--set", "coherence_fwhm_px=8", "--set", "eta=0.8"});
    REQUIRE(r.code == 0);
    const auto rows = read_csv(dir / "sweep.csv");
    REQUIRE(rows.size() == 3);
    const double sigma_quarter = std::stod(rows[1][2]);
    const double sigma_cell = std::stod(rows[2][2]);
    CHECK(sigma_quarter > sigma_cell);
    CHECK(sigma_quarter == doctest::Approx(0.8).epsilon(0.08));
    CHECK(sigma_cell == doctest::Approx(0.2).epsilon(0.35));
}

TEST_CASE("imaging produces transmission and comparison tables") {
    const fs::path dir = work_dir() / "imaging_run";
    const CliResult r = run({
        "imaging", "--seed", "77", "--shots", "6", "--out", dir.string(),
        "--set", "analysis_bin=8",
        "--set", "grid=64", "--set", "mu=0.3", "--set", "temporal_modes=40",
        "--set", "coherence_fwhm_px=8", "--set", "eta=0.7",
        "--set", "object=disc:32:32:12:0.9"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("snr_twin=") != std::string::npos);
    CHECK(r.out.find("sigma=") != std::string::npos);

    const auto img = read_csv(dir / "imaging.csv");
    REQUIRE(img.size() == 1 + 8 * 8);
    CHECK(img[0][3] == "alpha_est");

    const auto snr = read_csv(dir / "snr.csv");
    REQUIRE(snr.size() == 2);
    REQUIRE(snr[0].size() == 12);
    CHECK(std::stod(snr[1][0]) == 6);           // shots
    CHECK(std::stod(snr[1][4]) > 0.0);          // sigma_object
    CHECK(std::stod(snr[1][4]) < 1.0);          // sub-shot-noise
    CHECK(std::stod(snr[1][9]) > 1.0);          // twin beats classical diff
}

TEST_CASE("failures map to distinct exit codes") {
    SUBCASE("config: unknown key") {
        const CliResult r = run({"simulate", "--set", "warp_factor=9",
                                 "--out", (work_dir() / "never").string()});
        CHECK(r.code == 3);
        CHECK(r.err.find("error: config:") != std::string::npos);
    }
    SUBCASE("config: malformed value in a config file") {
        const fs::path cfg = work_dir() / "bad.cfg";
        std::ofstream(cfg) << "mu = banana\n";
        const CliResult r = run({"simulate", "--config", cfg.string(),
                                 "--out", (work_dir() / "never").string()});
        CHECK(r.code == 3);
        CHECK(r.err.find("bad.cfg:1") != std::string::npos);
    }
    SUBCASE("config: imaging without an object") {
        const CliResult r = run({"imaging", "--out",
                                 (work_dir() / "never").string()});
        CHECK(r.code == 3);
    }
    SUBCASE("io: analyzing a directory that holds no run") {
        const CliResult r =
            run({"analyze", "--in", (work_dir() / "nowhere").string()});
        CHECK(r.code == 4);
        CHECK(r.err.find("error: io:") != std::string::npos);
    }
    SUBCASE("format: a damaged frame file") {
        const fs::path dir = work_dir() / "damaged";
        std::vector<std::string> cmd = {"simulate", "--seed", "2", "--shots",
                                        "2", "--out", dir.string()};
        cmd.insert(cmd.end(), kSmallSource.begin(), kSmallSource.end());
        REQUIRE(run(cmd).code == 0);
        std::ofstream(dir / "signal_0001.tbf", std::ios::binary) << "TBF1";
        const CliResult r = run({"analyze", "--in", dir.string()});
        CHECK(r.code == 5);
        CHECK(r.err.find("error: format:") != std::string::npos);
    }
    SUBCASE("domain: a displacement window that eats the whole frame") {
        const fs::path dir = work_dir() / "tiny";
        std::vector<std::string> cmd = {"simulate", "--seed", "3", "--shots",
                                        "2", "--out", dir.string()};
        cmd.insert(cmd.end(), kSmallSource.begin(), kSmallSource.end());
        REQUIRE(run(cmd).code == 0);
        const CliResult r = run({"analyze", "--in", dir.string(), "--bin",
                                 "8", "--window", "6"});
        CHECK(r.code == 6);
        CHECK(r.err.find("error: domain:") != std::string::npos);
    }
    SUBCASE("config: malformed region flag") {
        const fs::path dir = work_dir() / "region_victim";
        std::vector<std::string> cmd = {"simulate", "--seed", "4", "--shots",
                                        "1", "--out", dir.string()};
        cmd.insert(cmd.end(), kSmallSource.begin(), kSmallSource.end());
        REQUIRE(run(cmd).code == 0);
        const CliResult r =
            run({"analyze", "--in", dir.string(), "--region", "1,2,3"});
        CHECK(r.code == 3);
        CHECK(r.err.find("error: config:") != std::string::npos);
    }
}
