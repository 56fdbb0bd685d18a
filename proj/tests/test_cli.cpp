#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::string& args) {
    static int serial = 0;
    const auto dir = fs::temp_directory_path() / "zetafluct_cli_io";
    fs::create_directories(dir);
    const auto out_path = dir / ("out" + std::to_string(serial) + ".txt");
    const auto err_path = dir / ("err" + std::to_string(serial) + ".txt");
    ++serial;
    const std::string cmd = std::string(ZETAFLUCT_CLI_PATH) + " " + args + " > " +
                            out_path.string() + " 2> " + err_path.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        return std::string((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    };
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

// cache with zeros up to height 2700 (covers cov --n 1000), built once
const std::string& shared_cache_dir() {
    static const std::string dir = [] {
        const auto d = fs::temp_directory_path() / "zetafluct_cli_cache";
        fs::remove_all(d);
        const auto r = run_cli("zeros compute --t-max 2700 --zeros-cache " + d.string());
        REQUIRE(r.exit_code == 0);
        return d.string();
    }();
    return dir;
}

}  // namespace

TEST_CASE("zeros compute populates the cache and reports the count") {
    const auto& dir = shared_cache_dir();
    CHECK(fs::exists(fs::path(dir) / "zeros.txt"));
    // recount the cached lines: height 2700 carries ~2670 zeros
    std::ifstream in(fs::path(dir) / "zeros.txt");
    std::size_t lines = 0;
    std::string line;
    while (std::getline(in, line)) ++lines;
    CHECK(lines > 2500);
    CHECK(lines < 2800);
}

TEST_CASE("zeros ingest on a missing file exits 2 and names the path") {
    const auto r = run_cli("zeros ingest --file /nonexistent/zeros.txt");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("/nonexistent/zeros.txt") != std::string::npos);
}

TEST_CASE("fluct rejects theta = 0.5 with a usage message") {
    const auto r = run_cli("fluct --n 100 --theta 0.5 --zeros-cache " + shared_cache_dir());
    CHECK(r.exit_code != 0);
    CHECK(r.err.find("(1/2, 1]") != std::string::npos);
}

TEST_CASE("fluct writes the three reports") {
    const auto out = (fs::temp_directory_path() / "zetafluct_cli_fluct").string();
    fs::remove_all(out);
    const auto r = run_cli("fluct --n 100 --theta 1.0 --zeros-cache " + shared_cache_dir() +
                           " --out " + out);
    REQUIRE(r.exit_code == 0);
    for (const char* name : {"samples.csv", "moments.csv", "cdf.csv"})
        CHECK(fs::exists(fs::path(out) / name));

    // moments.csv has f rows for p = 0..8
    std::ifstream in(fs::path(out) / "moments.csv");
    std::string line;
    int f_rows = 0;
    while (std::getline(in, line))
        if (line.rfind("f,", 0) == 0) ++f_rows;
    CHECK(f_rows == 9);
}

TEST_CASE("fluct on a small window runs inside a small cache") {
    const auto out = (fs::temp_directory_path() / "zetafluct_cli_fluct_small").string();
    const auto r = run_cli("fluct --n 10 --theta 1.0 --zeros-cache " + shared_cache_dir() +
                           " --out " + out);
    CHECK(r.exit_code == 0);
}

TEST_CASE("fluct exits 3 when the cache cannot cover the window") {
    const auto r = run_cli("fluct --n 100000 --theta 1.0 --zeros-cache " + shared_cache_dir());
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("height") != std::string::npos);
}

TEST_CASE("cov writes one row per unique beta and warns on duplicates") {
    const auto out = (fs::temp_directory_path() / "zetafluct_cli_cov").string();
    const auto r = run_cli("cov --n 1000 --betas 0.25,0.5,0.5,2 --zeros-cache " +
                           shared_cache_dir() + " --out " + out);
    REQUIRE(r.exit_code == 0);
    CHECK(r.err.find("duplicate") != std::string::npos);

    std::ifstream in(fs::path(out) / "cov.csv");
    std::string line;
    int rows = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) { header_seen = true; continue; }
        ++rows;
    }
    CHECK(rows == 3);
}

TEST_CASE("cov rejects beta <= 0") {
    const auto r = run_cli("cov --n 1000 --betas -1 --zeros-cache " + shared_cache_dir());
    CHECK(r.exit_code != 0);
    CHECK(r.err.find("beta must be > 0") != std::string::npos);
}

TEST_CASE("expsum rejects non-primes and H > K") {
    const auto r1 = run_cli("expsum --primes 4,6");
    CHECK(r1.exit_code != 0);
    CHECK(r1.err.find("not prime") != std::string::npos);

    const auto r2 = run_cli("expsum --primes 2,3 --k 1000 --h 2000");
    CHECK(r2.exit_code != 0);
    CHECK(r2.err.find("H <= K") != std::string::npos);
}

TEST_CASE("expsum custom experiment runs") {
    const auto out = (fs::temp_directory_path() / "zetafluct_cli_expsum").string();
    const auto r = run_cli("expsum --primes 2,3 --k 2000 --h 2000 --out " + out);
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("ratio") != std::string::npos);
    CHECK(fs::exists(fs::path(out) / "expsum.csv"));
}
