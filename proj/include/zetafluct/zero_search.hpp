#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "zetafluct/parallel.hpp"
#include "zetafluct/predictor.hpp"
#include "zetafluct/riemann_siegel.hpp"
#include "zetafluct/zero_table.hpp"

namespace zetafluct {

// Gram point g_n: theta(g_n) = n*pi.  Newton on theta with its known
// derivative; the initial guess inverts theta's leading term, which is
// main_term(t, 0) - 1/8 in units of pi.
inline double gram_point(std::int64_t n) {
    double t = solve_main_term(static_cast<double>(n) + 0.125, 0.0);
    if (t < 10.5) t = 10.5;
    const double target = static_cast<double>(n) * kPi;
    for (int it = 0; it < 50; ++it) {
        const double f = riemann_siegel_theta(t) - target;
        const double step = f / riemann_siegel_theta_prime(t);
        t -= step;
        if (t < 10.0) t = 10.0;
        if (std::fabs(step) < 1e-11 * t) break;
    }
    return t;
}

// Index range {n : t_lo < g_n < t_hi}; empty range has first > last.
inline std::pair<std::int64_t, std::int64_t> gram_index_range(double t_lo, double t_hi) {
    const double n_lo = riemann_siegel_theta(t_lo) / kPi;
    const double n_hi = riemann_siegel_theta(t_hi) / kPi;
    std::int64_t first = static_cast<std::int64_t>(std::ceil(n_lo));
    std::int64_t last = static_cast<std::int64_t>(std::floor(n_hi));
    if (first <= last) {
        // guard against boundary rounding
        while (gram_point(first) <= t_lo) ++first;
        while (last >= first && gram_point(last) >= t_hi) --last;
    }
    return {first, last};
}

struct GramBlock {
    double lo = 0.0, hi = 0.0;
    int expected_sign_changes = 0;
};

struct ZeroSearchResult {
    std::vector<double> zeros;
    std::int64_t discrepancy = 0;   // found - round(M(t_hi) - M(t_lo))
    bool suspected_missed = false;  // |discrepancy| > 2
    std::string diagnostic;
};

namespace detail {

inline constexpr int kMaxSubdivision = 64;
inline constexpr double kBracketWidth = 1e-9;

// Secant refinement with a bisection safeguard; the bracket [a, b] must
// have fa * fb < 0.  Deterministic for identical inputs.
inline double refine_zero(double a, double b, double fa, double fb) {
    for (int it = 0; it < 200 && b - a > kBracketWidth; ++it) {
        double m = b - fb * (b - a) / (fb - fa);  // secant
        const double margin = 0.125 * (b - a);
        if (!(m > a + margin && m < b - margin)) m = 0.5 * (a + b);
        const double fm = hardy_z(m);
        if (fm == 0.0) return m;
        if ((fa < 0.0) != (fm < 0.0)) {
            b = m; fb = fm;
        } else {
            a = m; fa = fm;
        }
    }
    return 0.5 * (a + b);
}

// Sign changes of Z inside (a, b) scanned at `depth` equal subintervals,
// refining each bracketing cell.  za, zb are precomputed endpoint values.
inline void scan_interval(double a, double b, double za, double zb, int depth,
                          std::vector<double>& out) {
    double prev_t = a, prev_z = za;
    for (int i = 1; i <= depth; ++i) {
        const double t = (i == depth) ? b : a + (b - a) * i / depth;
        const double z = (i == depth) ? zb : hardy_z(t);
        if ((prev_z < 0.0) != (z < 0.0)) out.push_back(refine_zero(prev_t, t, prev_z, z));
        prev_t = t; prev_z = z;
    }
}

// Count sign changes only (no refinement) at a given depth.
inline int count_changes(double a, double b, double za, double zb, int depth) {
    int changes = 0;
    double prev = za;
    for (int i = 1; i <= depth; ++i) {
        const double z = (i == depth) ? zb : hardy_z(a + (b - a) * i / depth);
        if ((prev < 0.0) != (z < 0.0)) ++changes;
        prev = z;
    }
    return changes;
}

}  // namespace detail

// All sign-change zeros of Z in (t_lo, t_hi), each refined to a bracket
// narrower than 1e-9.  Gram intervals are the scan unit; blocks between
// consecutive "good" Gram points (where (-1)^n Z(g_n) > 0) are deepened
// adaptively until the block carries as many sign changes as intervals,
// which is how close pairs and Gram's-law violations are caught.
inline ZeroSearchResult find_zeros(double t_lo, double t_hi) {
    if (!(t_lo >= 10.0 && t_lo < t_hi))
        throw std::domain_error("find_zeros: requires 10 <= t_lo < t_hi");

    const auto [g_first, g_last] = gram_index_range(t_lo, t_hi);

    // Scan boundaries: t_lo, the Gram points inside, t_hi.
    std::vector<double> pts;
    pts.push_back(t_lo);
    for (std::int64_t n = g_first; n <= g_last; ++n) pts.push_back(gram_point(n));
    pts.push_back(t_hi);

    const std::size_t nint = pts.size() - 1;
    std::vector<double> zval(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) zval[i] = hardy_z(pts[i]);

    // parity of the Gram index at each interior boundary
    auto good = [&](std::size_t idx) {
        // pts[idx] is Gram point g_{g_first + idx - 1} for 1 <= idx <= nint - 1
        const std::int64_t n = g_first + static_cast<std::int64_t>(idx) - 1;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        return sign * zval[idx] > 0.0;
    };

    std::vector<int> depth(nint, 2);
    // boundary segments carry no Rosser-block expectation; scan them deeper
    depth.front() = 8;
    depth.back() = 8;
    std::vector<int> found(nint, 0);
    for (std::size_t i = 0; i < nint; ++i)
        found[i] = detail::count_changes(pts[i], pts[i + 1], zval[i], zval[i + 1], depth[i]);

    // Deepen blocks delimited by good Gram points until each carries at
    // least as many sign changes as Gram intervals.  Boundary segments next
    // to t_lo/t_hi have no count expectation and keep their initial scan.
    std::size_t block_start = 1;
    while (block_start < nint) {
        if (!good(block_start)) { ++block_start; continue; }
        std::size_t block_end = block_start + 1;
        while (block_end < nint && !good(block_end)) ++block_end;
        if (block_end >= nint) break;
        const int expected = static_cast<int>(block_end - block_start);
        auto block_found = [&]() {
            int s = 0;
            for (std::size_t i = block_start; i < block_end; ++i) s += found[i];
            return s;
        };
        while (block_found() < expected) {
            // deepen the least-subdivided interval of the block first
            std::size_t worst = block_start;
            for (std::size_t i = block_start; i < block_end; ++i)
                if (depth[i] < depth[worst]) worst = i;
            if (depth[worst] >= detail::kMaxSubdivision) break;
            for (std::size_t i = block_start; i < block_end; ++i) {
                if (depth[i] > depth[worst]) continue;
                depth[i] *= 2;
                found[i] = detail::count_changes(pts[i], pts[i + 1], zval[i], zval[i + 1], depth[i]);
            }
        }
        block_start = block_end;
    }

    ZeroSearchResult result;
    for (std::size_t i = 0; i < nint; ++i)
        detail::scan_interval(pts[i], pts[i + 1], zval[i], zval[i + 1], depth[i], result.zeros);
    std::sort(result.zeros.begin(), result.zeros.end());

    const double expected_count = main_term(t_hi, kConstZeroGrid) - main_term(t_lo, kConstZeroGrid);
    result.discrepancy = static_cast<std::int64_t>(result.zeros.size()) - std::llround(expected_count);
    result.suspected_missed = std::llabs(result.discrepancy) > 2;
    if (result.suspected_missed)
        result.diagnostic = "suspected missed zeros: found " + std::to_string(result.zeros.size()) +
                            " vs main-term prediction " + std::to_string(std::llround(expected_count));
    return result;
}

// Zero table on (0, t_max], computed over disjoint Gram-aligned blocks in
// parallel and merged in block order (bit-for-bit deterministic).
inline ZeroTable compute_zero_table(double t_max) {
    if (!(t_max > 20.0 && t_max <= kMaxHeight))
        throw std::domain_error("compute_zero_table: t_max out of range");
    const double t_lo = 10.0;  // gamma_1 = 14.13...; nothing below 10

    const auto [g_first, g_last] = gram_index_range(t_lo, t_max);
    const std::int64_t intervals = (g_last >= g_first) ? (g_last - g_first + 1) : 0;
    const std::int64_t block_size = 2000;
    const std::int64_t nblocks = std::max<std::int64_t>(1, (intervals + block_size - 1) / block_size);

    // Align interior block edges with "good" Gram points so every Rosser
    // block lies inside a single search block.
    std::vector<double> edges(static_cast<std::size_t>(nblocks) + 1);
    edges.front() = t_lo;
    edges.back() = t_max;
    for (std::int64_t b = 1; b < nblocks; ++b) {
        std::int64_t n = g_first + b * block_size;
        double g = gram_point(n);
        for (int tries = 0; tries < 64 && n < g_last; ++tries) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            if (sign * hardy_z(g) > 0.0) break;
            ++n;
            g = gram_point(n);
        }
        edges[static_cast<std::size_t>(b)] = g;
    }

    std::vector<std::vector<double>> partial(static_cast<std::size_t>(nblocks));
    parallel_chunks(0, static_cast<std::size_t>(nblocks),
                    [&](std::size_t, std::size_t lo, std::size_t hi) {
        for (std::size_t b = lo; b < hi; ++b)
            partial[b] = find_zeros(edges[b], edges[b + 1]).zeros;
    }, 1);

    ZeroTable table;
    table.source = ZeroTable::Source::computed;
    for (auto& block : partial)
        table.zeros.insert(table.zeros.end(), block.begin(), block.end());
    table.max_height = t_max;
    return table;
}

}  // namespace zetafluct
