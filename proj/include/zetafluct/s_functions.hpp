#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "zetafluct/numeric_util.hpp"
#include "zetafluct/parallel.hpp"
#include "zetafluct/predictor.hpp"
#include "zetafluct/primes.hpp"
#include "zetafluct/zero_table.hpp"

namespace zetafluct {

// An ordinate within this distance of T counts as "equal to T" and
// contributes 1/2 to the zero count.
inline constexpr double kHalfCountEps = 1e-12;

/// N(T): zeros with ordinate strictly in (0, T), half-counting |gamma - T| < eps.
inline double count_zeros(const ZeroTable& table, double T) {
    if (T > table.max_height)
        throw std::domain_error("count_zeros: T exceeds table max height");
    const auto& z = table.zeros;
    const auto below = std::lower_bound(z.begin(), z.end(), T - kHalfCountEps);
    double count = static_cast<double>(below - z.begin());
    for (auto it = below; it != z.end() && *it < T + kHalfCountEps; ++it) count += 0.5;
    return count;
}

/// S(T) = N(T) - main_term(T, 7/8); the O(1/(1+T)) residue of the counting
/// identity is absorbed here, far below statistical noise at these heights.
inline double s_of_t(const ZeroTable& table, double T) {
    if (!(T >= 10.0)) throw std::domain_error("s_of_t: requires T >= 10");
    return count_zeros(table, T) - main_term(T, kConstZeroGrid);
}

/// von Mangoldt Lambda(n): log p when n = p^m, else 0.
inline double lambda(std::uint64_t n) {
    if (n < 2) return 0.0;
    std::uint64_t m = n;
    std::uint64_t p = 0;
    if (m % 2 == 0) p = 2;
    else {
        for (std::uint64_t d = 3; d * d <= m; d += 2)
            if (m % d == 0) { p = d; break; }
        if (p == 0) p = m;  // n itself is prime
    }
    while (m % p == 0) m /= p;
    return (m == 1) ? std::log(static_cast<double>(p)) : 0.0;
}

/// Tapered weights Lambda_x(n): Lambda on [1, x), two quadratic-taper
/// branches on [x, x^2) and [x^2, x^3], zero beyond x^3.
inline double lambda_x(std::uint64_t n, double x) {
    if (x < 2.0) throw std::domain_error("lambda_x: requires x >= 2");
    const double dn = static_cast<double>(n);
    const double x2 = x * x, x3 = x2 * x;
    if (dn > x3) return 0.0;
    const double l = lambda(n);
    if (l == 0.0) return 0.0;
    const double lx = std::log(x);
    if (dn < x) return l;
    if (dn < x2) {
        const double a = std::log(x3 / dn), b = std::log(x2 / dn);
        return l * (a * a - 2.0 * b * b) / (2.0 * lx * lx);
    }
    const double a = std::log(x3 / dn);
    return l * a * a / (2.0 * lx * lx);
}

/// Dirichlet-polynomial proxy S_x(t) = -(1/pi) sum_{p <= x^3} sin(t log p)/sqrt(p),
/// by direct compensated summation.
inline double s_x(double t, double x, const PrimeSieve& sieve) {
    const double x3 = x * x * x;
    if (static_cast<double>(sieve.limit) < std::floor(x3))
        throw std::domain_error("s_x: sieve limit below x^3");
    const std::size_t n = sieve.prefix_upto(static_cast<std::uint64_t>(x3));
    KahanSum acc;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = static_cast<double>(sieve.primes[i]);
        acc.add(std::sin(t * std::log(p)) / std::sqrt(p));
    }
    return -acc.value() / kPi;
}

// ---------------------------------------------------------------------------
// Batch evaluation of S_x at many points.  Two tiers:
//   - primes below ~1000*t_max: direct phase evaluation (vectorizable sin),
//   - larger primes: sin/cos advanced across consecutive primes by rotation
//     with small-angle polynomials (the log-gap shrinks like gap/p), with a
//     fresh libm anchor every segment to stop drift.
// Exact summation order is fixed, so results are reproducible bit-for-bit
// regardless of thread count.
// ---------------------------------------------------------------------------
namespace detail {

inline constexpr std::size_t kSxLanes = 16;
inline constexpr std::size_t kSxSegment = 65536;

struct SxPrimeData {
    std::size_t split = 0;             // primes[0, split): direct tier
    std::vector<double> log_p;         // direct tier: log p
    std::vector<double> rsqrt_p;       // direct tier: 1/sqrt(p)
    std::vector<float> dlog;           // recurrence tier: log p_{i+1} - log p_i
    std::vector<float> rsqrt;          // recurrence tier: 1/sqrt(p)
    std::vector<double> anchor_log;    // segment anchors: log p at segment start
    std::size_t recur_count = 0;
};

inline SxPrimeData prepare_sx(const PrimeSieve& sieve, std::size_t nprimes, double t_max) {
    SxPrimeData d;
    const std::uint64_t direct_bound =
        static_cast<std::uint64_t>(std::max(1024.0, 1000.0 * t_max));
    d.split = std::min(nprimes, sieve.prefix_upto(direct_bound));
    d.log_p.resize(d.split);
    d.rsqrt_p.resize(d.split);
    parallel_chunks(0, d.split, [&](std::size_t, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double p = static_cast<double>(sieve.primes[i]);
            d.log_p[i] = std::log(p);
            d.rsqrt_p[i] = 1.0 / std::sqrt(p);
        }
    });
    d.recur_count = nprimes - d.split;
    d.dlog.resize(d.recur_count);
    d.rsqrt.resize(d.recur_count);
    d.anchor_log.resize((d.recur_count + kSxSegment - 1) / kSxSegment);
    parallel_chunks(0, d.recur_count, [&](std::size_t, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double p = static_cast<double>(sieve.primes[d.split + i]);
            d.rsqrt[i] = static_cast<float>(1.0 / std::sqrt(p));
            if (i + 1 < d.recur_count) {
                const double pn = static_cast<double>(sieve.primes[d.split + i + 1]);
                d.dlog[i] = static_cast<float>(std::log(pn / p));
            } else {
                d.dlog[i] = 0.0f;
            }
            if (i % kSxSegment == 0) d.anchor_log[i / kSxSegment] = std::log(p);
        }
    }, kSxSegment);
    return d;
}

}  // namespace detail

/// S_x evaluated at every t in `ts`; matches s_x() to ~1e-6 absolute and is
/// orders of magnitude faster for large x^3.
inline std::vector<double> sx_batch(const std::vector<double>& ts, double x,
                                    const PrimeSieve& sieve) {
    const double x3 = x * x * x;
    if (static_cast<double>(sieve.limit) < std::floor(x3))
        throw std::domain_error("sx_batch: sieve limit below x^3");
    const std::size_t nprimes = sieve.prefix_upto(static_cast<std::uint64_t>(x3));
    std::vector<double> out(ts.size(), 0.0);
    if (nprimes == 0 || ts.empty()) return out;

    double t_max = 0.0;
    for (double t : ts) t_max = std::max(t_max, std::fabs(t));
    const auto data = detail::prepare_sx(sieve, nprimes, t_max);

    constexpr std::size_t L = detail::kSxLanes;
    const std::size_t ngroups = (ts.size() + L - 1) / L;
    parallel_chunks(0, ngroups, [&](std::size_t, std::size_t glo, std::size_t ghi) {
        for (std::size_t g = glo; g < ghi; ++g) {
            const std::size_t k0 = g * L;
            const std::size_t nk = std::min(L, ts.size() - k0);
            double t[L] = {0}, acc[L] = {0};
            for (std::size_t l = 0; l < nk; ++l) t[l] = ts[k0 + l];

            // direct tier
            for (std::size_t i = 0; i < data.split; ++i) {
                const double lp = data.log_p[i], w = data.rsqrt_p[i];
                for (std::size_t l = 0; l < L; ++l) acc[l] += w * fast_sin(t[l] * lp);
            }
            // rotation tier, re-anchored at every segment start
            for (std::size_t seg = 0; seg * detail::kSxSegment < data.recur_count; ++seg) {
                const std::size_t i0 = seg * detail::kSxSegment;
                const std::size_t i1 = std::min(data.recur_count, i0 + detail::kSxSegment);
                const double lp0 = data.anchor_log[seg];
                double c[L], s[L];
                for (std::size_t l = 0; l < L; ++l) {
                    c[l] = std::cos(t[l] * lp0);
                    s[l] = std::sin(t[l] * lp0);
                }
                for (std::size_t i = i0; i < i1; ++i) {
                    const double w = static_cast<double>(data.rsqrt[i]);
                    const double du = static_cast<double>(data.dlog[i]);
                    for (std::size_t l = 0; l < L; ++l) {
                        acc[l] += w * s[l];
                        const double dd = t[l] * du;
                        const double h2 = dd * dd;
                        const double cd = 1.0 - h2 * (0.5 - h2 * (1.0 / 24.0 - h2 / 720.0));
                        const double sd = dd * (1.0 - h2 * (1.0 / 6.0 - h2 / 120.0));
                        const double cn = c[l] * cd - s[l] * sd;
                        s[l] = s[l] * cd + c[l] * sd;
                        c[l] = cn;
                    }
                }
            }
            for (std::size_t l = 0; l < nk; ++l) out[k0 + l] = -acc[l] / kPi;
        }
    }, 1);
    return out;
}

}  // namespace zetafluct
