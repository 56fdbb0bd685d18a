#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "zetafluct/numeric_util.hpp"

namespace zetafluct {

using uint128 = unsigned __int128;

// ---------------------------------------------------------------------------
// Univariate targets.
// ---------------------------------------------------------------------------

/// Exact (p-1)!! for even p, 0 for odd p.  Guarded at p <= 40.
inline uint128 gauss_moment_exact(int p) {
    if (p < 0) throw std::domain_error("gauss_moment: p must be >= 0");
    if (p > 40) throw std::overflow_error("gauss_moment: p > 40 exceeds the exact-arithmetic guard");
    if (p % 2 == 1) return 0;
    uint128 acc = 1;
    for (int m = p - 1; m >= 3; m -= 2) acc *= static_cast<uint128>(m);
    return acc;
}

/// Standard Gaussian moment E[Y^p] = (p-1)!! (even p), 0 (odd p).
inline double gauss_moment(int p) {
    return static_cast<double>(gauss_moment_exact(p));
}

/// (2n)!/((2pi)^{2n} n!) == (2n-1)!!/(2 pi^2)^n — the 2n-th moment constant
/// of the un-normalized counting fluctuation.
inline double s_moment_constant(int n) {
    if (n < 1 || n > 10) throw std::domain_error("s_moment_constant: requires 1 <= n <= 10");
    const double twopisq = 2.0 * kPi * kPi;
    return static_cast<double>(gauss_moment_exact(2 * n)) / std::pow(twopisq, n);
}

// ---------------------------------------------------------------------------
// Complex-pair Wick enumeration.
//
// Moments E[eta1^a1 conj(eta1)^a2 eta2^b1 conj(eta2)^b2] of jointly complex
// Gaussian (eta1, eta2) with E eta_i conj(eta_i) = 1, E eta_1 conj(eta_2) =
// rho, and all unconjugated/unconjugated covariances zero.  Only bijections
// between unbarred and barred slots contribute; a bijection with k
// cross-index pairs contributes rho^k.
// ---------------------------------------------------------------------------

struct PairingCount {
    int a1 = 0, a2 = 0, b1 = 0, b2 = 0;
    int k = 0;                        // number of cross-index pairs
    unsigned long long count = 0;     // bijections with exactly k cross pairs
};

// Coefficient vector c[k] = #bijections with exactly k cross pairs.
// Empty moment (a1+b1 != a2+b2) gives all zeros.  Sum_k c[k] = (a1+b1)!.
inline std::vector<unsigned long long> wick_cross_counts(int a1, int a2, int b1, int b2) {
    if (a1 < 0 || a2 < 0 || b1 < 0 || b2 < 0)
        throw std::domain_error("wick_cross_counts: negative multiplicity");
    if (a1 + a2 + b1 + b2 > 16)
        throw std::length_error("wick_cross_counts: total degree > 16 guard");
    std::vector<unsigned long long> counts(static_cast<std::size_t>(a1 + b1) + 1, 0ULL);
    if (a1 + b1 != a2 + b2) return counts;
    const int m = a1 + b1;
    if (m == 0) { counts[0] = 1; return counts; }

    // unbarred slot types: a1 copies of index 1, b1 of index 2 (fixed order);
    // barred types likewise.  Distinct arrangements of the barred multiset
    // stand for a2! * b2! labeled bijections each.
    std::vector<int> unbarred(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) unbarred[static_cast<std::size_t>(i)] = (i < a1) ? 1 : 2;
    std::vector<int> barred(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) barred[static_cast<std::size_t>(i)] = (i < a2) ? 1 : 2;
    std::sort(barred.begin(), barred.end());

    unsigned long long label_mult = 1;
    for (int i = 2; i <= a2; ++i) label_mult *= static_cast<unsigned long long>(i);
    for (int i = 2; i <= b2; ++i) label_mult *= static_cast<unsigned long long>(i);

    do {
        int crosses = 0;
        for (int i = 0; i < m; ++i)
            if (unbarred[static_cast<std::size_t>(i)] != barred[static_cast<std::size_t>(i)]) ++crosses;
        counts[static_cast<std::size_t>(crosses)] += label_mult;
    } while (std::next_permutation(barred.begin(), barred.end()));
    return counts;
}

inline std::vector<PairingCount> wick_pairing_counts(int a1, int a2, int b1, int b2) {
    const auto c = wick_cross_counts(a1, a2, b1, b2);
    std::vector<PairingCount> out;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        out.push_back(PairingCount{a1, a2, b1, b2, static_cast<int>(k), c[k]});
    }
    return out;
}

/// E[eta1^a1 conj(eta1)^a2 eta2^b1 conj(eta2)^b2] = sum_k n_k rho^k.
inline double wick_bivariate(int a1, int a2, int b1, int b2, double rho) {
    const auto counts = wick_cross_counts(a1, a2, b1, b2);
    double acc = 0.0;
    double rpow = 1.0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        acc += static_cast<double>(counts[k]) * rpow;
        rpow *= rho;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Real bivariate Gaussian joint moments E[Y1^a Y2^b], unit variances,
// correlation rho, by recursive enumeration of perfect matchings.
// ---------------------------------------------------------------------------

namespace detail {
inline void real_matchings(std::vector<int>& groups, std::vector<bool>& used, int matched,
                           int crosses, std::vector<unsigned long long>& coeff) {
    const int n = static_cast<int>(groups.size());
    if (matched == n) {
        coeff[static_cast<std::size_t>(crosses)] += 1;
        return;
    }
    int first = 0;
    while (used[static_cast<std::size_t>(first)]) ++first;
    used[static_cast<std::size_t>(first)] = true;
    for (int j = first + 1; j < n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        used[static_cast<std::size_t>(j)] = true;
        const int c = (groups[static_cast<std::size_t>(first)] != groups[static_cast<std::size_t>(j)]) ? 1 : 0;
        real_matchings(groups, used, matched + 2, crosses + c, coeff);
        used[static_cast<std::size_t>(j)] = false;
    }
    used[static_cast<std::size_t>(first)] = false;
}
}  // namespace detail

// coeff[j] = #perfect matchings of (a copies of Y1, b of Y2) with j cross pairs
inline std::vector<unsigned long long> real_joint_cross_counts(int a, int b) {
    if (a < 0 || b < 0) throw std::domain_error("real_joint_cross_counts: negative power");
    if (a + b > 12) throw std::length_error("real_joint_cross_counts: a + b > 12 guard");
    std::vector<unsigned long long> coeff(static_cast<std::size_t>(std::min(a, b)) + 1, 0ULL);
    if ((a + b) % 2 == 1) return coeff;
    if (a + b == 0) { coeff[0] = 1; return coeff; }
    std::vector<int> groups(static_cast<std::size_t>(a + b));
    for (int i = 0; i < a + b; ++i) groups[static_cast<std::size_t>(i)] = (i < a) ? 1 : 2;
    std::vector<bool> used(static_cast<std::size_t>(a + b), false);
    detail::real_matchings(groups, used, 0, 0, coeff);
    return coeff;
}

/// E[Y1^a Y2^b] for standard bivariate Gaussian with correlation rho.
inline double gaussian_joint_moment_real(int a, int b, double rho) {
    const auto coeff = real_joint_cross_counts(a, b);
    double acc = 0.0;
    double rpow = 1.0;
    for (std::size_t j = 0; j < coeff.size(); ++j) {
        acc += static_cast<double>(coeff[j]) * rpow;
        rpow *= rho;
    }
    return acc;
}

}  // namespace zetafluct
