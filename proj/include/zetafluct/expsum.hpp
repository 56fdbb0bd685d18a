#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "zetafluct/numeric_util.hpp"
#include "zetafluct/predictor.hpp"
#include "zetafluct/primes.hpp"

namespace zetafluct {

/// Kahan-compensated sum_{k=K}^{K+H-1} e^{i theta g_k}.
inline std::complex<double> direct_exp_sum(double theta, std::int64_t K, std::int64_t H,
                                           const GFunction& g) {
    if (H < 1) throw std::domain_error("direct_exp_sum: H must be >= 1");
    const auto gv = g.eval_range(K, K + H - 1);
    KahanComplexSum acc;
    for (double gk : gv) {
        const double phase = theta * gk;
        acc.add({std::cos(phase), std::sin(phase)});
    }
    return acc.value();
}

/// van der Corput bound kappa*|I|*sqrt(lambda) + 1/sqrt(lambda), absolute
/// constant reported as 1; the empirical constant is fitted by the battery.
inline double vdc_bound(double lambda, double kappa, double interval_len) {
    if (!(lambda > 0.0)) throw std::domain_error("vdc_bound: lambda must be > 0");
    if (!(kappa >= 1.0)) throw std::domain_error("vdc_bound: kappa must be >= 1");
    return kappa * interval_len * std::sqrt(lambda) + 1.0 / std::sqrt(lambda);
}

struct PhaseParams {
    double theta = 0.0;   // log of the prime-product ratio
    double lambda = 0.0;  // lower bound for |theta g''| on [K, K+H]
    double kappa = 0.0;   // ratio bound: |theta g''| <= kappa*lambda
    std::uint64_t y = 0;  // largest prime in the tuple
    int n = 0;            // half the tuple length
};

/// theta = log(p_{l+1}...p_{2n} / p_1...p_l) and the (lambda, kappa) pair for
/// the phase theta*g on [K, K+H], from endpoint evaluations of g'' with a 10%
/// safety margin (|g''| is monotone decreasing at these scales).
inline PhaseParams lambda_kappa_for_prime_tuple(const std::vector<std::uint64_t>& primes,
                                                std::size_t l, std::int64_t K, std::int64_t H) {
    if (primes.size() < 2 || primes.size() % 2 != 0)
        throw std::domain_error("lambda_kappa_for_prime_tuple: need an even tuple of primes");
    if (l < 1 || l >= primes.size())
        throw std::domain_error("lambda_kappa_for_prime_tuple: split l out of range");
    for (std::uint64_t p : primes)
        if (!is_prime_u64(p))
            throw std::domain_error("lambda_kappa_for_prime_tuple: " + std::to_string(p) +
                                    " is not prime");

    std::vector<std::uint64_t> left(primes.begin(), primes.begin() + static_cast<std::ptrdiff_t>(l));
    std::vector<std::uint64_t> right(primes.begin() + static_cast<std::ptrdiff_t>(l), primes.end());
    {
        auto ls = left, rs = right;
        std::sort(ls.begin(), ls.end());
        std::sort(rs.begin(), rs.end());
        if (ls == rs)
            throw std::domain_error("lambda_kappa_for_prime_tuple: equal multisets give theta = 0");
    }

    double num = 1.0, den = 1.0;
    std::uint64_t y = 0;
    for (std::uint64_t p : right) { num *= static_cast<double>(p); y = std::max(y, p); }
    for (std::uint64_t p : left) { den *= static_cast<double>(p); y = std::max(y, p); }

    PhaseParams params;
    params.theta = std::log(num / den);
    params.y = y;
    params.n = static_cast<int>(primes.size() / 2);

    const double g2_lo = std::fabs(g_second_derivative(static_cast<double>(K)).finite_difference);
    const double g2_hi = std::fabs(g_second_derivative(static_cast<double>(K + H)).finite_difference);
    const double at = std::fabs(params.theta);
    params.lambda = 0.9 * at * std::min(g2_lo, g2_hi);
    const double upper = 1.1 * at * std::max(g2_lo, g2_hi);
    params.kappa = upper / params.lambda;
    return params;
}

struct TwoPointPhaseResult {
    std::complex<double> sum;
    double bound = 0.0;  // H sqrt(y) log y/(sqrt(K) log K) + sqrt(y K) log K
};

/// sum_{k=K}^{K+H-1} exp(-i(g_k log p1 - g_{k+u} log p2)) for distinct primes.
inline TwoPointPhaseResult two_point_phase_sum(std::uint64_t p1, std::uint64_t p2,
                                               std::int64_t K, std::int64_t H, std::int64_t u,
                                               const GFunction& g) {
    if (!is_prime_u64(p1) || !is_prime_u64(p2))
        throw std::domain_error("two_point_phase_sum: inputs must be prime");
    if (p1 == p2) throw std::domain_error("two_point_phase_sum: primes must differ");
    if (u < 0) throw std::domain_error("two_point_phase_sum: offset u must be >= 0");
    const auto gv = g.eval_range(K, K + H - 1 + u);
    const double l1 = std::log(static_cast<double>(p1)), l2 = std::log(static_cast<double>(p2));
    KahanComplexSum acc;
    for (std::int64_t k = 0; k < H; ++k) {
        const double phase = -(gv[static_cast<std::size_t>(k)] * l1 -
                               gv[static_cast<std::size_t>(k + u)] * l2);
        acc.add({std::cos(phase), std::sin(phase)});
    }
    TwoPointPhaseResult r;
    r.sum = acc.value();
    const double y = static_cast<double>(std::max(p1, p2));
    const double dK = static_cast<double>(K);
    r.bound = static_cast<double>(H) * std::sqrt(y) * std::log(y) / (std::sqrt(dK) * std::log(dK)) +
              std::sqrt(y) * std::sqrt(dK) * std::log(dK);
    return r;
}

/// sum_{p <= x} p^{is}/p.
inline std::complex<double> prime_phase_sum(double x, double s, const PrimeSieve& sieve) {
    if (!(x >= 3.0)) throw std::domain_error("prime_phase_sum: requires x >= 3");
    if (static_cast<double>(sieve.limit) < x)
        throw std::domain_error("prime_phase_sum: sieve limit below x");
    const std::size_t n = sieve.prefix_upto(static_cast<std::uint64_t>(x));
    KahanComplexSum acc;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = static_cast<double>(sieve.primes[i]);
        const double phase = s * std::log(p);
        acc.add({std::cos(phase) / p, std::sin(phase) / p});
    }
    return acc.value();
}

struct MertensSums {
    double sum_logp_over_p = 0.0;  // sum_{p < y} log p / p
    double sum_inv_p = 0.0;        // sum_{p < y} 1/p
};

inline MertensSums mertens_sums(double y, const PrimeSieve& sieve) {
    if (!(y >= 2.0)) throw std::domain_error("mertens_sums: requires y >= 2");
    if (static_cast<double>(sieve.limit) + 1.0 < y)
        throw std::domain_error("mertens_sums: sieve limit below y");
    KahanSum s1, s2;
    for (std::uint32_t q : sieve.primes) {
        const double p = static_cast<double>(q);
        if (!(p < y)) break;
        s1.add(std::log(p) / p);
        s2.add(1.0 / p);
    }
    return {s1.value(), s2.value()};
}

// ---------------------------------------------------------------------------
// Experiment battery.
// ---------------------------------------------------------------------------

struct ExpSumExperiment {
    std::string id;
    std::int64_t K = 0, H = 0;
    std::string phase;     // human-readable phase spec
    double theta = 0.0;    // 0 for two-point rows
    double abs_sum = 0.0;
    double bound = 0.0;
    double ratio = 0.0;    // |sum| / bound
    double y = 0.0;
    int n = 0;
    bool theta_inequality_ok = true;  // |theta| >= 1/y^n (tuple rows)
};

struct ExpSumBattery {
    std::vector<ExpSumExperiment> experiments;
    double fitted_constant = 0.0;  // max ratio across the battery
    bool all_theta_ok = true;
};

namespace detail {
inline std::vector<std::vector<std::uint64_t>> battery_pairs() {
    return {{2, 3}, {2, 5}, {3, 5}, {2, 7}, {5, 7}, {2, 97}, {3, 89},
            {13, 17}, {29, 31}, {41, 43}, {71, 73}, {83, 89}};
}
inline std::vector<std::pair<std::vector<std::uint64_t>, std::size_t>> battery_quads() {
    return {
        {{2, 3, 5, 7}, 2},   {{2, 5, 3, 7}, 2},  {{2, 7, 3, 5}, 2},
        {{11, 13, 17, 19}, 2}, {{2, 89, 3, 97}, 2}, {{5, 7, 11, 13}, 2},
        {{23, 29, 31, 37}, 2}, {{2, 3, 89, 97}, 2}, {{41, 47, 43, 53}, 2},
        {{2, 3, 5, 7}, 1},   {{2, 3, 5, 7}, 3},  {{3, 5, 7, 11}, 2},
    };
}
}  // namespace detail

/// Deterministic default battery: prime-pair and prime-quadruple phases plus
/// two-point offset phases, each at K in {1e3, 1e4, 1e5} with H = K.
inline ExpSumBattery run_expsum_battery(const std::vector<std::int64_t>& Ks = {1000, 10000, 100000}) {
    ExpSumBattery battery;
    const GFunction g(0.0);
    int serial = 0;

    for (std::int64_t K : Ks) {
        const std::int64_t H = K;
        const auto gv = g.eval_range(K, 2 * K + 200);
        auto sum_for_theta = [&](double theta) {
            KahanComplexSum acc;
            for (std::int64_t k = 0; k < H; ++k) {
                const double phase = theta * gv[static_cast<std::size_t>(k)];
                acc.add({std::cos(phase), std::sin(phase)});
            }
            return acc.value();
        };

        auto add_tuple = [&](const std::vector<std::uint64_t>& tuple, std::size_t l) {
            const auto params = lambda_kappa_for_prime_tuple(tuple, l, K, H);
            ExpSumExperiment e;
            e.id = "tuple_" + std::to_string(serial++);
            e.K = K;
            e.H = H;
            std::string desc = "theta=log(";
            for (std::size_t i = l; i < tuple.size(); ++i)
                desc += (i > l ? "*" : "") + std::to_string(tuple[i]);
            desc += "/";
            for (std::size_t i = 0; i < l; ++i)
                desc += (i > 0 ? "*" : "") + std::to_string(tuple[i]);
            desc += ")";
            e.phase = desc;
            e.theta = params.theta;
            e.abs_sum = std::abs(sum_for_theta(params.theta));
            e.bound = vdc_bound(params.lambda, params.kappa, static_cast<double>(H));
            e.ratio = e.abs_sum / e.bound;
            e.y = static_cast<double>(params.y);
            e.n = params.n;
            e.theta_inequality_ok =
                std::fabs(params.theta) >= 1.0 / std::pow(e.y, params.n);
            battery.experiments.push_back(e);
        };

        for (const auto& pair : detail::battery_pairs()) add_tuple(pair, 1);
        for (const auto& [quad, l] : detail::battery_quads()) add_tuple(quad, l);

        for (const auto& pp : {std::pair<std::uint64_t, std::uint64_t>{2, 3},
                               {2, 5}, {3, 5}, {5, 7}}) {
            for (std::int64_t u : {1, 11, 132}) {
                const auto r = two_point_phase_sum(pp.first, pp.second, K, H, u, g);
                ExpSumExperiment e;
                e.id = "twopoint_" + std::to_string(serial++);
                e.K = K;
                e.H = H;
                e.phase = "g_k*log" + std::to_string(pp.first) + "-g_{k+" + std::to_string(u) +
                          "}*log" + std::to_string(pp.second);
                e.abs_sum = std::abs(r.sum);
                e.bound = r.bound;
                e.ratio = e.abs_sum / e.bound;
                e.y = static_cast<double>(std::max(pp.first, pp.second));
                e.n = 1;
                battery.experiments.push_back(e);
            }
        }
    }

    for (const auto& e : battery.experiments) {
        battery.fitted_constant = std::max(battery.fitted_constant, e.ratio);
        battery.all_theta_ok = battery.all_theta_ok && e.theta_inequality_ok;
    }
    return battery;
}

}  // namespace zetafluct
