// Command-line laboratory for zero-fluctuation statistics: acquires tables of
// critical-line zero ordinates (computed or ingested), derives fluctuation,
// covariance and exponential-sum reports, and emits self-describing CSVs.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <limits>
#include <sstream>

#include "zetafluct/config.hpp"
#include "zetafluct/csv.hpp"
#include "zetafluct/expsum.hpp"
#include "zetafluct/predictor.hpp"
#include "zetafluct/s_functions.hpp"
#include "zetafluct/sampler.hpp"
#include "zetafluct/zero_search.hpp"
#include "zetafluct/zero_table.hpp"

namespace {

constexpr int kExitFileError = 2;
constexpr int kExitCoverage = 3;

std::string cache_file(const std::string& cache_dir) {
    return (std::filesystem::path(cache_dir) / "zeros.txt").string();
}

std::string resolve_cache_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    const std::string env = zetafluct::RunConfig::env_cache_override();
    if (!env.empty()) return env;
    return "zeros-cache";
}

std::uint64_t file_fingerprint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return 0;
    std::uint64_t h = 1469598103934665603ULL;
    char buf[65536];
    while (in.read(buf, sizeof buf) || in.gcount() > 0)
        h = zetafluct::fnv1a(buf, static_cast<std::size_t>(in.gcount()), h);
    return h;
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    return buf;
}

void write_standard_header(zetafluct::CsvWriter& csv, const std::string& command,
                           const std::string& cache_path) {
    csv.comment("generated_at", timestamp_utc());
    csv.comment("command", command);
    if (!cache_path.empty()) {
        char fp[32];
        std::snprintf(fp, sizeof fp, "0x%016llx",
                      static_cast<unsigned long long>(file_fingerprint(cache_path)));
        csv.comment("cache", cache_path + " fingerprint=" + fp);
    }
}

zetafluct::ZeroTable load_cache_or_exit(const std::string& cache_dir) {
    const std::string path = cache_file(cache_dir);
    if (!std::filesystem::exists(path)) {
        std::cerr << "error: zero cache not found: " << path
                  << " (run `zetafluct zeros compute` or `zetafluct zeros ingest` first)\n";
        std::exit(kExitFileError);
    }
    return zetafluct::ingest_table(path, std::numeric_limits<std::int64_t>::max());
}

}  // namespace

int main(int argc, char** argv) {
    using namespace zetafluct;

    CLI::App app{"zero-fluctuation laboratory"};
    app.set_config("--config", "", "key=value configuration file (flags override)");
    std::string cache_flag;
    app.add_option("--zeros-cache", cache_flag, "zero cache directory (env ZETA_FLUCT_CACHE)")
        ->envname("ZETA_FLUCT_CACHE");

    std::string full_command;
    for (int i = 0; i < argc; ++i) full_command += std::string(i ? " " : "") + argv[i];

    // ----------------------------------------------------------- zeros ----
    auto* zeros_cmd = app.add_subcommand("zeros", "acquire a table of zero ordinates");
    auto* compute_cmd = zeros_cmd->add_subcommand("compute", "compute zeros up to a height");
    double t_max = 10000.0;
    compute_cmd->add_option("--t-max", t_max, "largest ordinate to search")
        ->required()
        ->check(CLI::Range(25.0, 1e8));
    compute_cmd->callback([&] {
        const std::string dir = resolve_cache_dir(cache_flag);
        const ZeroTable table = compute_zero_table(t_max);
        const auto check = verify_count(table, t_max);
        save_table(table, cache_file(dir));
        std::printf("computed %lld zeros up to height %.3f (count discrepancy %lld)\n",
                    static_cast<long long>(table.size()), table.max_height,
                    static_cast<long long>(check.discrepancy));
        std::printf("cache: %s\n", cache_file(dir).c_str());
        if (check.suspect) {
            std::fprintf(stderr, "error: zero count inconsistent with the smooth term\n");
            std::exit(1);
        }
    });

    auto* ingest_cmd = zeros_cmd->add_subcommand("ingest", "ingest a published zero table");
    std::string ingest_file;
    std::int64_t ingest_limit = std::numeric_limits<std::int64_t>::max();
    ingest_cmd->add_option("--file", ingest_file, "path to the table")->required();
    ingest_cmd->add_option("--limit", ingest_limit, "read at most this many zeros");
    ingest_cmd->callback([&] {
        if (!std::filesystem::exists(ingest_file)) {
            std::cerr << "error: no such file: " << ingest_file << "\n";
            std::exit(kExitFileError);
        }
        const std::string dir = resolve_cache_dir(cache_flag);
        const ZeroTable table = ingest_table(ingest_file, ingest_limit);
        save_table(table, cache_file(dir));
        std::printf("ingested %lld zeros, max height %.3f\n",
                    static_cast<long long>(table.size()), table.max_height);
        std::printf("cache: %s\n", cache_file(dir).c_str());
    });
    zeros_cmd->require_subcommand(1);

    // ----------------------------------------------------------- fluct ----
    auto* fluct_cmd = app.add_subcommand("fluct", "window fluctuation statistics");
    std::int64_t fl_n = 100000;
    double fl_theta = 1.0;
    std::string fl_xi_csv = "-1,0,1";
    std::string fl_out = "out";
    fluct_cmd->add_option("--n", fl_n, "window base index N")->check(CLI::PositiveNumber);
    fluct_cmd->add_option("--theta", fl_theta, "window exponent, must lie in (1/2, 1]");
    fluct_cmd->add_option("--xi", fl_xi_csv, "comma-separated xi offsets for X sampling");
    fluct_cmd->add_option("--out", fl_out, "output directory");
    fluct_cmd->callback([&] {
        if (!(fl_theta > 0.5 && fl_theta <= 1.0)) {
            std::cerr << "error: --theta must lie in (1/2, 1]\n";
            std::exit(1);
        }
        const std::string dir = resolve_cache_dir(cache_flag);
        const ZeroTable table = load_cache_or_exit(dir);
        const WindowSpec window(fl_n, fl_theta);
        const auto xis = parse_double_list(fl_xi_csv);

        // coverage checks before any work
        if (window.last() > table.size()) {
            std::cerr << "error: window needs " << window.last() << " zeros, cache has "
                      << table.size() << "; required max height approx "
                      << solve_t(window.last() + 10) << "\n";
            std::exit(kExitCoverage);
        }
        PredictedGrid grid0 = build_grid(window.first(), window.last(), 0.0);
        for (double xi : xis) {
            PredictedGrid g = grid0;
            g.xi = xi;
            if (required_height(g, window.last()) > table.max_height) {
                std::cerr << "error: X sampling at xi=" << xi << " needs zeros up to height "
                          << required_height(g, window.last()) << ", cache covers "
                          << table.max_height << "\n";
                std::exit(kExitCoverage);
            }
        }

        const std::string cpath = cache_file(dir);
        const auto samples = samples_with_x(table, grid0, window);

        {
            CsvWriter csv((std::filesystem::path(fl_out) / "samples.csv").string());
            write_standard_header(csv, full_command, cpath);
            csv.comment("window", "N=" + std::to_string(fl_n) + " theta=" + fmt(fl_theta) +
                                      " H=" + std::to_string(window.size()));
            csv.columns({"k", "gamma", "t", "sigma", "f", "x_xi0"});
            for (const auto& s : samples) csv.row(s.k, s.gamma, s.t, s.sigma, s.f, s.x);
        }
        {
            CsvWriter csv((std::filesystem::path(fl_out) / "moments.csv").string());
            write_standard_header(csv, full_command, cpath);
            csv.columns({"series", "xi", "order", "empirical", "target", "deviation", "count"});
            std::vector<double> f(samples.size());
            for (std::size_t i = 0; i < samples.size(); ++i) f[i] = samples[i].f;
            for (const auto& row : moment_report(f, 8))
                csv.row("f", 0.0, row.order, row.empirical, row.target, row.deviation, row.count);
            for (double xi : xis) {
                PredictedGrid g = grid0;
                g.xi = xi;
                const auto xs = x_samples(table, g, window);
                for (const auto& row : moment_report(xs, 8))
                    csv.row("x", xi, row.order, row.empirical, row.target, row.deviation, row.count);
            }
        }
        {
            CsvWriter csv((std::filesystem::path(fl_out) / "cdf.csv").string());
            write_standard_header(csv, full_command, cpath);
            std::vector<double> f(samples.size()), xs(samples.size());
            for (std::size_t i = 0; i < samples.size(); ++i) {
                f[i] = samples[i].f;
                xs[i] = samples[i].x;
            }
            const auto fr = empirical_cdf_vs_gaussian(f);
            const auto xr = empirical_cdf_vs_gaussian(xs);
            csv.comment("ks_f", fmt(fr.ks));
            csv.comment("ks_x_xi0", fmt(xr.ks));
            csv.columns({"series", "s", "empirical", "gaussian", "deviation"});
            for (const auto& r : fr.rows) csv.row("f", r.s, r.empirical, r.gaussian, r.deviation);
            for (const auto& r : xr.rows) csv.row("x", r.s, r.empirical, r.gaussian, r.deviation);
        }
        std::printf("wrote samples.csv, moments.csv, cdf.csv under %s\n", fl_out.c_str());
    });

    // ------------------------------------------------------------- cov ----
    auto* cov_cmd = app.add_subcommand("cov", "two-point covariance vs (1-beta)+ targets");
    std::int64_t cov_n = 100000;
    std::string cov_betas = "0.25,0.5,1,2";
    std::string cov_out = "out";
    cov_cmd->add_option("--n", cov_n, "window base index N (theta = 1 enforced)")
        ->check(CLI::PositiveNumber);
    cov_cmd->add_option("--betas", cov_betas, "comma-separated beta exponents (> 0)");
    cov_cmd->add_option("--out", cov_out, "output directory");
    cov_cmd->callback([&] {
        auto betas = parse_double_list(cov_betas);
        if (betas.empty()) {
            std::cerr << "error: --betas list is empty\n";
            std::exit(1);
        }
        for (double b : betas)
            if (!(b > 0.0)) {
                std::cerr << "error: beta must be > 0 (got " << b << ")\n";
                std::exit(1);
            }
        {
            std::set<double> seen;
            std::vector<double> unique;
            for (double b : betas) {
                if (seen.insert(b).second) unique.push_back(b);
                else std::fprintf(stderr, "warning: duplicate beta %g dropped\n", b);
            }
            betas = unique;
        }

        const std::string dir = resolve_cache_dir(cache_flag);
        const ZeroTable table = load_cache_or_exit(dir);

        double beta_max = 0.0;
        for (double b : betas) beta_max = std::max(beta_max, b);
        const std::int64_t k_max = 2 * cov_n - 1 + OffsetSpec{beta_max}.offset(cov_n);
        if (k_max > table.size()) {
            std::cerr << "error: need " << k_max << " zeros, cache has " << table.size()
                      << "; required max height approx " << solve_t(k_max + 10) << "\n";
            std::exit(kExitCoverage);
        }
        const PredictedGrid grid = build_grid(cov_n, k_max, 0.0);

        CsvWriter csv((std::filesystem::path(cov_out) / "cov.csv").string());
        write_standard_header(csv, full_command, cache_file(dir));
        csv.columns({"beta", "offset", "corr_f", "product_f", "corr_x", "product_x", "target",
                     "pairs"});
        for (double b : betas) {
            const auto pairs = two_point_samples(table, grid, cov_n, b, true);
            const auto rep = covariance_report(pairs, b, cov_n);
            csv.row(rep.beta, rep.offset, rep.corr_f, rep.product_f, rep.corr_x, rep.product_x,
                    rep.target, rep.count);
        }
        std::printf("wrote cov.csv under %s (%zu beta rows)\n", cov_out.c_str(), betas.size());
    });

    // ---------------------------------------------------------- expsum ----
    auto* exp_cmd = app.add_subcommand("expsum", "exponential-sum battery vs bound");
    std::string exp_out = "out";
    std::string exp_primes;
    std::int64_t exp_k = 0, exp_h = 0;
    std::size_t exp_split = 1;
    exp_cmd->add_option("--out", exp_out, "output directory");
    exp_cmd->add_option("--primes", exp_primes,
                        "comma-separated prime tuple for a single custom experiment");
    exp_cmd->add_option("--split", exp_split, "tuple split index l (custom experiment)");
    exp_cmd->add_option("--k", exp_k, "custom experiment start index K");
    exp_cmd->add_option("--h", exp_h, "custom experiment length H (must satisfy H <= K)");
    exp_cmd->callback([&] {
        CsvWriter csv((std::filesystem::path(exp_out) / "expsum.csv").string());
        write_standard_header(csv, full_command, "");
        csv.columns({"id", "K", "H", "phase", "theta", "abs_sum", "bound", "ratio", "y", "n"});

        if (!exp_primes.empty()) {
            std::vector<std::uint64_t> tuple;
            for (double v : parse_double_list(exp_primes)) {
                const auto p = static_cast<std::uint64_t>(v);
                if (!is_prime_u64(p)) {
                    std::cerr << "error: " << p << " is not prime\n";
                    std::exit(1);
                }
                tuple.push_back(p);
            }
            const std::int64_t K = (exp_k > 0) ? exp_k : 10000;
            const std::int64_t H = (exp_h > 0) ? exp_h : K;
            if (H > K) {
                std::cerr << "error: H <= K is required (got H=" << H << ", K=" << K << ")\n";
                std::exit(1);
            }
            const GFunction g(0.0);
            const auto params = lambda_kappa_for_prime_tuple(tuple, exp_split, K, H);
            const auto sum = direct_exp_sum(params.theta, K, H, g);
            const double bound = vdc_bound(params.lambda, params.kappa, static_cast<double>(H));
            csv.row("custom", K, H, exp_primes, params.theta, std::abs(sum), bound,
                    std::abs(sum) / bound, static_cast<double>(params.y), params.n);
            std::printf("|sum| = %.6f, bound = %.6f, ratio = %.6f\n", std::abs(sum), bound,
                        std::abs(sum) / bound);
            return;
        }

        const auto battery = run_expsum_battery();
        for (const auto& e : battery.experiments)
            csv.row(e.id, e.K, e.H, e.phase, e.theta, e.abs_sum, e.bound, e.ratio, e.y, e.n);
        std::printf("battery: %zu experiments, fitted constant C = %.6f, theta inequality %s\n",
                    battery.experiments.size(), battery.fitted_constant,
                    battery.all_theta_ok ? "holds" : "VIOLATED");
        std::printf("wrote expsum.csv under %s\n", exp_out.c_str());
    });

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
