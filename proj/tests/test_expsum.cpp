#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "zetafluct/expsum.hpp"
#include "zetafluct/primes.hpp"

using namespace zetafluct;

TEST_CASE("direct_exp_sum trivial phases") {
    const GFunction g(0.0);
    const auto s0 = direct_exp_sum(0.0, 1000, 500, g);
    CHECK(s0.real() == 500.0);  // unit summands, compensated: exact
    CHECK(s0.imag() == 0.0);

    std::mt19937 rng(31u);
    std::uniform_real_distribution<double> td(-3.0, 3.0);
    for (int i = 0; i < 8; ++i) {
        const double theta = td(rng);
        const auto s = direct_exp_sum(theta, 2000, 700, g);
        CHECK(std::abs(s) <= 700.0 + 1e-9);
        const auto conj_s = direct_exp_sum(-theta, 2000, 700, g);
        CHECK(conj_s.real() == Catch::Approx(s.real()).margin(1e-9));
        CHECK(conj_s.imag() == Catch::Approx(-s.imag()).margin(1e-9));
    }
}

TEST_CASE("vdc_bound closed forms") {
    CHECK(vdc_bound(1.0, 1.0, 10.0) == 11.0);
    // at the optimizing lambda* = 1/(kappa |I|) the bound is 2 sqrt(kappa |I|)
    for (const auto [kappa, len] : {std::pair<double, double>{4.0, 100.0}, {2.0, 5000.0}}) {
        const double lstar = 1.0 / (kappa * len);
        CHECK(vdc_bound(lstar, kappa, len) ==
              Catch::Approx(2.0 * std::sqrt(kappa * len)).epsilon(1e-14));
    }
    CHECK_THROWS_AS(vdc_bound(0.0, 1.0, 5.0), std::domain_error);
    CHECK_THROWS_AS(vdc_bound(1.0, 0.5, 5.0), std::domain_error);
}

TEST_CASE("vdc_bound reproduces the tuple-regime bound shape") {
    // with lambda = 1/(y^n K log^2 K) and kappa = n y^n log y the bound equals
    // H n y^{n/2} log y/(sqrt K log K) + y^{n/2} sqrt K log K
    for (const auto [y, n, K, H] : {std::tuple<double, int, double, double>{30.0, 1, 1e4, 1e4},
                                    {100.0, 2, 1e5, 5e4}}) {
        const double yn = std::pow(y, n);
        const double lambda = 1.0 / (yn * K * std::pow(std::log(K), 2));
        const double kappa = n * yn * std::log(y);
        const double expected = H * n * std::pow(y, 0.5 * n) * std::log(y) /
                                    (std::sqrt(K) * std::log(K)) +
                                std::pow(y, 0.5 * n) * std::sqrt(K) * std::log(K);
        CHECK(vdc_bound(lambda, kappa, H) == Catch::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("prime tuple phases") {
    const auto p23 = lambda_kappa_for_prime_tuple({2, 3}, 1, 10000, 10000);
    CHECK(p23.theta == Catch::Approx(std::log(1.5)).epsilon(1e-15));
    CHECK(p23.theta > 1.0 / 6.0);
    CHECK(p23.theta >= 1.0 / (3.0 * 3.0));
    CHECK(p23.lambda > 0.0);
    CHECK(p23.kappa >= 1.0);

    const auto p32 = lambda_kappa_for_prime_tuple({3, 2}, 1, 10000, 10000);
    CHECK(p32.theta == Catch::Approx(-p23.theta).epsilon(1e-15));

    CHECK_THROWS_AS(lambda_kappa_for_prime_tuple({2, 3, 3, 2}, 2, 1000, 1000), std::domain_error);
    CHECK_THROWS_AS(lambda_kappa_for_prime_tuple({4, 3}, 1, 1000, 1000), std::domain_error);
}

TEST_CASE("unique-factorization inequality |theta| >= 1/y^n, exhaustive") {
    const std::vector<std::uint64_t> primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    // all ordered pairs (n = 1)
    for (auto p : primes)
        for (auto q : primes) {
            if (p == q) continue;
            const auto r = lambda_kappa_for_prime_tuple({p, q}, 1, 1000, 1000);
            const double y = static_cast<double>(std::max(p, q));
            CHECK(std::fabs(r.theta) >= 1.0 / y);
        }
    // all quadruples with the balanced split (n = 2), distinct multisets
    for (auto a : primes)
        for (auto b : primes)
            for (auto c : primes)
                for (auto d : primes) {
                    std::uint64_t l1 = std::min(a, b), l2 = std::max(a, b);
                    std::uint64_t r1 = std::min(c, d), r2 = std::max(c, d);
                    if (l1 == r1 && l2 == r2) continue;
                    const auto r = lambda_kappa_for_prime_tuple({a, b, c, d}, 2, 1000, 1000);
                    const double y = static_cast<double>(std::max({a, b, c, d}));
                    CHECK(std::fabs(r.theta) >= 1.0 / (y * y));
                }
}

TEST_CASE("random tuples with y = 100 satisfy the inequality") {
    const auto sieve = make_prime_sieve(100);
    std::mt19937 rng(271828u);
    std::uniform_int_distribution<std::size_t> pick(0, sieve.primes.size() - 1);
    int tested = 0;
    while (tested < 100) {
        std::vector<std::uint64_t> tuple = {sieve.primes[pick(rng)], sieve.primes[pick(rng)],
                                            sieve.primes[pick(rng)], sieve.primes[pick(rng)]};
        std::vector<std::uint64_t> l = {tuple[0], tuple[1]}, r = {tuple[2], tuple[3]};
        std::sort(l.begin(), l.end());
        std::sort(r.begin(), r.end());
        if (l == r) continue;
        const auto params = lambda_kappa_for_prime_tuple(tuple, 2, 5000, 5000);
        const double y = 100.0;
        CHECK(std::fabs(params.theta) >= 1.0 / (y * y));
        ++tested;
    }
}

TEST_CASE("two_point_phase_sum reduces to direct_exp_sum at u = 0") {
    const GFunction g(0.0);
    const auto tp = two_point_phase_sum(2, 3, 3000, 1500, 0, g);
    const auto ds = direct_exp_sum(std::log(1.5), 3000, 1500, g);
    CHECK(tp.sum.real() == Catch::Approx(ds.real()).margin(1e-6));
    CHECK(tp.sum.imag() == Catch::Approx(ds.imag()).margin(1e-6));
    CHECK(std::abs(tp.sum) <= 1500.0 + 1e-9);

    CHECK_THROWS_AS(two_point_phase_sum(5, 5, 1000, 100, 1, g), std::domain_error);
    CHECK_THROWS_AS(two_point_phase_sum(4, 3, 1000, 100, 1, g), std::domain_error);
}

TEST_CASE("two_point_phase_sum stays well under its bound") {
    const GFunction g(0.0);
    const auto r = two_point_phase_sum(2, 3, 10000, 10000, 11, g);
    CHECK(std::abs(r.sum) / r.bound <= 10.0);
}

TEST_CASE("prime_phase_sum values and Mertens bracket") {
    const auto sieve = make_prime_sieve(1000000);
    // x = 3, s = 0: 1/2 + 1/3
    const auto v = prime_phase_sum(3.0, 0.0, sieve);
    CHECK(v.real() == Catch::Approx(5.0 / 6.0).epsilon(1e-15));
    CHECK(v.imag() == 0.0);
    // Mertens: sum 1/p - log log x brackets the constant 0.2615
    for (double x : {1e3, 1e4, 1e5, 1e6}) {
        const double resid = prime_phase_sum(x, 0.0, sieve).real() - std::log(std::log(x));
        CHECK(resid > 0.2);
        CHECK(resid < 0.4);
    }
    CHECK_THROWS_AS(prime_phase_sum(2.0, 0.0, sieve), std::domain_error);
    CHECK_THROWS_AS(prime_phase_sum(1e8, 0.0, sieve), std::domain_error);
}

TEST_CASE("mertens_sums") {
    const auto sieve = make_prime_sieve(1000000);
    const auto m3 = mertens_sums(3.0, sieve);  // p < 3: just p = 2
    CHECK(m3.sum_logp_over_p == Catch::Approx(std::log(2.0) / 2.0).epsilon(1e-15));
    CHECK(m3.sum_inv_p == 0.5);

    double prev_log = 0.0, prev_inv = 0.0;
    for (double y : {100.0, 1e4, 1e6}) {
        const auto m = mertens_sums(y, sieve);
        CHECK(m.sum_logp_over_p - std::log(y) > -2.0);
        CHECK(m.sum_logp_over_p - std::log(y) < 0.0);
        CHECK(m.sum_logp_over_p >= prev_log);
        CHECK(m.sum_inv_p >= prev_inv);
        prev_log = m.sum_logp_over_p;
        prev_inv = m.sum_inv_p;
    }
}

TEST_CASE("battery at K = 1000 stays under the constant budget") {
    const auto battery = run_expsum_battery({1000});
    CHECK(battery.experiments.size() >= 36);
    CHECK(battery.all_theta_ok);
    CHECK(battery.fitted_constant <= 10.0);
    for (const auto& e : battery.experiments) {
        CHECK(e.bound > 0.0);
        CHECK(e.abs_sum <= static_cast<double>(e.H) + 1e-9);
    }
}
