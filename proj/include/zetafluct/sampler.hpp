#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "zetafluct/gaussian_oracle.hpp"
#include "zetafluct/predictor.hpp"
#include "zetafluct/s_functions.hpp"
#include "zetafluct/zero_table.hpp"

namespace zetafluct {

// Sampling window I_N = Z intersect [N, N + floor(N^theta) - 1].  The
// uniform index variable is enumerated exhaustively rather than sampled:
// every statistic below is an exact average over the window's atoms.
struct WindowSpec {
    std::int64_t N = 1;
    double theta = 1.0;

    WindowSpec(std::int64_t n, double th) : N(n), theta(th) {
        if (n < 1) throw std::domain_error("WindowSpec: N must be >= 1");
        if (!(th > 0.5 && th <= 1.0))
            throw std::domain_error("WindowSpec: theta must lie in (1/2, 1]");
    }

    std::int64_t size() const {
        const auto h = static_cast<std::int64_t>(
            std::floor(std::pow(static_cast<double>(N), theta)));
        return std::max<std::int64_t>(h, 1);
    }
    std::int64_t first() const { return N; }
    std::int64_t last() const { return N + size() - 1; }
};

inline std::vector<std::int64_t> sample_indices(const WindowSpec& w) {
    std::vector<std::int64_t> idx(static_cast<std::size_t>(w.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = w.first() + static_cast<std::int64_t>(i);
    return idx;
}

struct FluctuationSample {
    std::int64_t k = 0;
    double gamma = 0.0;
    double t = 0.0;
    double sigma = 0.0;
    double f = 0.0;        // (gamma - t)/sigma
    double x = 0.0;        // sqrt(2) pi S(t + xi sigma)/sqrt(log log t), if has_x
    bool has_x = false;
};

/// Normalized fluctuations f_k over the window; the grid must cover it.
inline std::vector<FluctuationSample> fluctuations(const ZeroTable& table,
                                                   const PredictedGrid& grid,
                                                   const WindowSpec& w) {
    if (!grid.covers(w.first()) || !grid.covers(w.last()))
        throw std::out_of_range("fluctuations: grid does not cover the window");
    if (w.last() > table.size())
        throw std::out_of_range("fluctuations: zero table has only " +
                                std::to_string(table.size()) + " entries, need " +
                                std::to_string(w.last()));
    std::vector<FluctuationSample> out(static_cast<std::size_t>(w.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::int64_t k = w.first() + static_cast<std::int64_t>(i);
        FluctuationSample& s = out[i];
        s.k = k;
        s.gamma = table.gamma(k);
        s.t = grid.t_of(k);
        s.sigma = grid.sigma_of_k(k);
        s.f = (s.gamma - s.t) / s.sigma;
    }
    return out;
}

/// Required table height for X-sampling up to index k_max at offset xi.
inline double required_height(const PredictedGrid& grid, std::int64_t k_max) {
    return grid.g_of(k_max);
}

/// X_k = sqrt(2) pi S(t_k + xi sigma_k) / sqrt(log log t_k) for the window.
inline std::vector<double> x_samples(const ZeroTable& table, const PredictedGrid& grid,
                                     const WindowSpec& w) {
    const double need = required_height(grid, w.last());
    if (need > table.max_height)
        throw std::out_of_range("x_samples: requires zeros up to height " +
                                std::to_string(need) + ", table covers " +
                                std::to_string(table.max_height));
    std::vector<double> out(static_cast<std::size_t>(w.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::int64_t k = w.first() + static_cast<std::int64_t>(i);
        const double tk = grid.t_of(k);
        const double gk = grid.g_of(k);
        out[i] = std::sqrt(2.0) * kPi * s_of_t(table, gk) / std::sqrt(std::log(std::log(tk)));
    }
    return out;
}

/// fluctuations() plus the X column.
inline std::vector<FluctuationSample> samples_with_x(const ZeroTable& table,
                                                     const PredictedGrid& grid,
                                                     const WindowSpec& w) {
    auto out = fluctuations(table, grid, w);
    const auto xs = x_samples(table, grid, w);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].x = xs[i];
        out[i].has_x = true;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reports.
// ---------------------------------------------------------------------------

struct MomentRow {
    int order = 0;
    double empirical = 0.0;
    double target = 0.0;
    double deviation = 0.0;
    std::size_t count = 0;
};

/// Empirical moments vs standard Gaussian targets, orders 0..max_order.
inline std::vector<MomentRow> moment_report(const std::vector<double>& values, int max_order) {
    if (values.empty()) throw std::domain_error("moment_report: empty sample");
    std::vector<MomentRow> rows;
    rows.reserve(static_cast<std::size_t>(max_order) + 1);
    for (int p = 0; p <= max_order; ++p) {
        KahanSum acc;
        for (double v : values) acc.add(std::pow(v, p));
        MomentRow row;
        row.order = p;
        row.empirical = acc.value() / static_cast<double>(values.size());
        row.target = gauss_moment(p);
        row.deviation = std::fabs(row.empirical - row.target);
        row.count = values.size();
        rows.push_back(row);
    }
    return rows;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

struct CdfRow {
    double s = 0.0;
    double empirical = 0.0;
    double gaussian = 0.0;
    double deviation = 0.0;
};

struct CdfReport {
    std::vector<CdfRow> rows;  // on the fixed s-grid
    double ks = 0.0;           // exact sup-distance over the sample
    std::size_t count = 0;
};

inline std::vector<double> default_s_grid() {
    std::vector<double> grid;
    for (double s = -3.0; s <= 3.0 + 1e-12; s += 0.5) grid.push_back(s);
    return grid;
}

/// Kolmogorov-Smirnov distance to the standard normal plus per-s deviations.
inline CdfReport empirical_cdf_vs_gaussian(std::vector<double> values,
                                           const std::vector<double>& s_grid = default_s_grid()) {
    if (values.empty()) throw std::domain_error("empirical_cdf_vs_gaussian: empty sample");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());

    CdfReport report;
    report.count = values.size();
    double ks = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double phi = normal_cdf(values[i]);
        ks = std::max(ks, std::fabs(static_cast<double>(i + 1) / n - phi));
        ks = std::max(ks, std::fabs(phi - static_cast<double>(i) / n));
    }
    report.ks = ks;

    for (double s : s_grid) {
        const auto up = std::upper_bound(values.begin(), values.end(), s);
        CdfRow row;
        row.s = s;
        row.empirical = static_cast<double>(up - values.begin()) / n;
        row.gaussian = normal_cdf(s);
        row.deviation = std::fabs(row.empirical - row.gaussian);
        report.rows.push_back(row);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Two-point sampling: pairs (k, k + floor((log N)^beta)) with theta = 1.
// ---------------------------------------------------------------------------

struct OffsetSpec {
    double beta = 1.0;
    std::int64_t offset(std::int64_t N) const {
        if (!(beta > 0.0)) throw std::domain_error("OffsetSpec: beta must be > 0");
        return static_cast<std::int64_t>(
            std::floor(std::pow(std::log(static_cast<double>(N)), beta)));
    }
};

struct TwoPointSample {
    std::int64_t k1 = 0, k2 = 0;
    double f1 = 0.0, f2 = 0.0;
    double x1 = 0.0, x2 = 0.0;
    bool has_x = false;
};

/// Pairs for all window atoms: k1 in [N, 2N-1], k2 = k1 + offset.
inline std::vector<TwoPointSample> two_point_samples(const ZeroTable& table,
                                                     const PredictedGrid& grid,
                                                     std::int64_t N, double beta,
                                                     bool with_x = true) {
    const std::int64_t off = OffsetSpec{beta}.offset(N);
    const std::int64_t k_max = 2 * N - 1 + off;
    if (!grid.covers(N) || !grid.covers(k_max))
        throw std::out_of_range("two_point_samples: grid does not cover [N, 2N-1+offset]");
    if (k_max > table.size())
        throw std::out_of_range("two_point_samples: zero table has only " +
                                std::to_string(table.size()) + " entries, need " +
                                std::to_string(k_max));
    if (with_x && required_height(grid, k_max) > table.max_height)
        throw std::out_of_range("two_point_samples: table height too small for X at k_max");

    std::vector<TwoPointSample> out(static_cast<std::size_t>(N));
    const double sqrt2pi = std::sqrt(2.0) * kPi;
    for (std::int64_t i = 0; i < N; ++i) {
        const std::int64_t k1 = N + i, k2 = k1 + off;
        TwoPointSample& s = out[static_cast<std::size_t>(i)];
        s.k1 = k1;
        s.k2 = k2;
        s.f1 = (table.gamma(k1) - grid.t_of(k1)) / grid.sigma_of_k(k1);
        s.f2 = (table.gamma(k2) - grid.t_of(k2)) / grid.sigma_of_k(k2);
        if (with_x) {
            s.x1 = sqrt2pi * s_of_t(table, grid.g_of(k1)) / std::sqrt(std::log(std::log(grid.t_of(k1))));
            s.x2 = sqrt2pi * s_of_t(table, grid.g_of(k2)) / std::sqrt(std::log(std::log(grid.t_of(k2))));
            s.has_x = true;
        }
    }
    return out;
}

struct CovarianceReport {
    double beta = 0.0;
    std::int64_t offset = 0;
    double corr_f = 0.0, product_f = 0.0;
    double corr_x = 0.0, product_x = 0.0;
    bool has_x = false;
    double target = 0.0;  // (1 - beta)+
    std::size_t count = 0;
};

namespace detail {
struct CorrResult { double corr; double product; };
inline CorrResult pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const double n = static_cast<double>(a.size());
    KahanSum sa, sb, saa, sbb, sab;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sa.add(a[i]); sb.add(b[i]);
        saa.add(a[i] * a[i]); sbb.add(b[i] * b[i]); sab.add(a[i] * b[i]);
    }
    const double ma = sa.value() / n, mb = sb.value() / n;
    const double va = saa.value() / n - ma * ma;
    const double vb = sbb.value() / n - mb * mb;
    const double cov = sab.value() / n - ma * mb;
    if (!(va > 0.0) || !(vb > 0.0))
        throw std::domain_error("covariance_report: degenerate variance");
    return {cov / std::sqrt(va * vb), sab.value() / n};
}
}  // namespace detail

inline CovarianceReport covariance_report(const std::vector<TwoPointSample>& pairs, double beta,
                                          std::int64_t N) {
    if (pairs.size() < 1000)
        throw std::domain_error("covariance_report: needs at least 1000 pairs");
    CovarianceReport rep;
    rep.beta = beta;
    rep.offset = OffsetSpec{beta}.offset(N);
    rep.target = std::max(1.0 - beta, 0.0);
    rep.count = pairs.size();

    std::vector<double> f1(pairs.size()), f2(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) { f1[i] = pairs[i].f1; f2[i] = pairs[i].f2; }
    const auto cf = detail::pearson(f1, f2);
    rep.corr_f = cf.corr;
    rep.product_f = cf.product;

    if (!pairs.empty() && pairs.front().has_x) {
        std::vector<double> x1(pairs.size()), x2(pairs.size());
        for (std::size_t i = 0; i < pairs.size(); ++i) { x1[i] = pairs[i].x1; x2[i] = pairs[i].x2; }
        const auto cx = detail::pearson(x1, x2);
        rep.corr_x = cx.corr;
        rep.product_x = cx.product;
        rep.has_x = true;
    }
    return rep;
}

struct JointMomentRow {
    int a = 0, b = 0;
    double empirical = 0.0;
    double target = 0.0;  // bivariate Gaussian at rho = (1-beta)+
    double deviation = 0.0;
    std::size_t count = 0;
};

inline JointMomentRow joint_moment_report(const std::vector<TwoPointSample>& pairs,
                                          int a, int b, double beta) {
    if (a < 0 || b < 0 || a + b > 6)
        throw std::domain_error("joint_moment_report: requires a, b >= 0 and a + b <= 6");
    if (pairs.empty()) throw std::domain_error("joint_moment_report: empty sample");
    KahanSum acc;
    for (const auto& p : pairs) acc.add(std::pow(p.f1, a) * std::pow(p.f2, b));
    JointMomentRow row;
    row.a = a;
    row.b = b;
    row.empirical = acc.value() / static_cast<double>(pairs.size());
    row.target = gaussian_joint_moment_real(a, b, std::max(1.0 - beta, 0.0));
    row.deviation = std::fabs(row.empirical - row.target);
    row.count = pairs.size();
    return row;
}

/// Both sides of the counting identity
/// #{k : gamma_k > t_k + xi sigma_k} = #{k : N(t_k + xi sigma_k) <= k - 1/2};
/// equal for every xi since N jumps exactly at the zeros.
inline std::pair<std::int64_t, std::int64_t> counting_identity_sides(
    const ZeroTable& table, const PredictedGrid& grid, const WindowSpec& w) {
    std::int64_t lhs = 0, rhs = 0;
    for (std::int64_t k = w.first(); k <= w.last(); ++k) {
        const double gk = grid.g_of(k);
        if (table.gamma(k) > gk) ++lhs;
        if (count_zeros(table, gk) <= static_cast<double>(k) - 0.5) ++rhs;
    }
    return {lhs, rhs};
}

}  // namespace zetafluct
