#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "zetafluct/numeric_util.hpp"
#include "zetafluct/parallel.hpp"

namespace zetafluct {

// Counting constants of the smooth zero-counting main term.  7/8 defines the
// predicted ordinates t_k (solutions of main term = k - 1/2); 11/8 defines
// the interpolation g(x) (main term = x).  The two grids coincide at integer
// arguments since 11/8 - 7/8 = 1/2, which is what makes t(k) an unbiased
// predictor of the k-th zero.
inline constexpr double kConstZeroGrid = 7.0 / 8.0;
inline constexpr double kConstG = 11.0 / 8.0;

namespace detail {
// long double core keeps the residual of the main-term equation well below
// 1e-10 even when the target is ~1e6 (double rounding alone would eat it).
inline long double main_term_l(long double t, long double c) {
    const long double twopi = 6.283185307179586476925286766559L;
    return (t / twopi) * (std::log(t / twopi) - 1.0L) + c;
}
}  // namespace detail

/// Smooth main term of the zero count: (t/2pi) log(t/(2pi e)) + c.
inline double main_term(double t, double c) {
    if (!(t > 0.0)) throw std::domain_error("main_term: t must be positive");
    return static_cast<double>(detail::main_term_l(t, c));
}

/// Derivative of the main term, log(t/2pi)/(2pi).
inline double main_term_prime(double t) {
    return std::log(t / kTwoPi) / kTwoPi;
}

// Solve main_term(t, c) = target on the increasing branch t > 2*pi.
// Newton from t0 = 2pi*target/log(target+2) + 2pi*e, with a bisection
// safeguard; converges for every target > c - 1.
inline double solve_main_term(double target, double c, double hint = 0.0) {
    const double twopi_e = kTwoPi * 2.71828182845904523536;
    if (!(target > c - 1.0))
        throw std::domain_error("solve_main_term: target below the branch minimum");

    double t = hint;
    if (!(t > kTwoPi)) {
        const double guess_base = (target > 1.0) ? kTwoPi * target / std::log(target + 2.0) : 0.0;
        t = guess_base + twopi_e;
    }

    double lo = kTwoPi * (1.0 + 1e-12);
    double hi = t;
    while (detail::main_term_l(hi, c) < static_cast<long double>(target))
        hi *= 2.0;

    for (int it = 0; it < 200; ++it) {
        const long double f = detail::main_term_l(t, c) - static_cast<long double>(target);
        if (f > 0.0L) hi = std::min(hi, t); else lo = std::max(lo, t);
        const double fp = main_term_prime(t);
        double step = static_cast<double>(f) / fp;
        double tn = t - step;
        if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);   // bisection fallback
        const long double res = detail::main_term_l(tn, c) - static_cast<long double>(target);
        t = tn;
        if (std::fabs(static_cast<double>(res)) < 5e-12 || hi - lo < 1e-15 * t) break;
    }
    return t;
}

/// Predicted ordinate of the k-th zero: main_term(t, c) = k - 1/2.
inline double solve_t(std::int64_t k, double c = kConstZeroGrid) {
    if (k < 1) throw std::domain_error("solve_t: k must be >= 1");
    return solve_main_term(static_cast<double>(k) - 0.5, c);
}

/// Normalization sigma = sqrt(2 log log t)/log t; defined for t > e.
inline double sigma_of(double t) {
    if (!(t > 2.718281828459045)) throw std::domain_error("sigma_of: requires t > e");
    const double lt = std::log(t);
    return std::sqrt(2.0 * std::log(lt)) / lt;
}

// ---------------------------------------------------------------------------
// g(x) = t(x) + xi * sigma(t(x)), with t(.) inverting the main term at
// constant 11/8.  Defined for x above the threshold x0 where t(x) > e; the
// sampling indices used anywhere in this project are far above x0.
// ---------------------------------------------------------------------------
class GFunction {
  public:
    explicit GFunction(double xi = 0.0, double counting_constant = kConstG)
        : xi_(xi), c_(counting_constant) {
        // least x with t(x) > e + 0.01
        x0_ = static_cast<double>(detail::main_term_l(2.718281828459045L + 0.01L, c_));
    }

    double xi() const { return xi_; }
    double counting_constant() const { return c_; }
    double x_min() const { return x0_; }

    double operator()(double x) const { return eval(x); }

    double eval(double x, double hint = 0.0) const {
        if (!(x > x0_))
            throw std::domain_error("GFunction: x below solvability threshold x0 = " +
                                    std::to_string(x0_));
        const double t = solve_main_term(x, c_, hint);
        return (xi_ == 0.0) ? t : t + xi_ * sigma_of(t);
    }

    // Evaluate g on the integer range [k_lo, k_hi]; sequential warm starts
    // make this ~3x cheaper than independent solves.
    std::vector<double> eval_range(std::int64_t k_lo, std::int64_t k_hi) const {
        if (k_hi < k_lo) return {};
        std::vector<double> out(static_cast<std::size_t>(k_hi - k_lo + 1));
        parallel_chunks(0, out.size(), [&](std::size_t, std::size_t lo, std::size_t hi) {
            double hint = 0.0;
            for (std::size_t i = lo; i < hi; ++i) {
                const double x = static_cast<double>(k_lo + static_cast<std::int64_t>(i));
                const double t = solve_main_term(x, c_, hint);
                hint = t;
                out[i] = (xi_ == 0.0) ? t : t + xi_ * sigma_of(t);
            }
        }, 4096);
        return out;
    }

  private:
    double xi_;
    double c_;
    double x0_;
};

struct SecondDerivativeProbe {
    double finite_difference = 0.0;  // central second difference of g
    double asymptotic = 0.0;         // -2pi/(x log^2 x)
    double ratio = 0.0;              // finite_difference / asymptotic
};

// Central second difference with step h = x * 1e-5, plus the leading
// asymptotic -2pi/(x (log x)^2).  The asymptotic approaches the true value
// only at log-log speed, so `ratio` drifts toward 1 very slowly; callers
// should treat it as a trend indicator, not a convergence certificate.
inline SecondDerivativeProbe g_second_derivative(double x, double xi = 0.0) {
    if (!(x >= 1e3)) throw std::domain_error("g_second_derivative: requires x >= 1e3");
    const GFunction g(xi);
    const double h = x * 1e-5;
    const double gm = g(x - h), g0 = g(x), gp = g(x + h);
    SecondDerivativeProbe probe;
    probe.finite_difference = (gp - 2.0 * g0 + gm) / (h * h);
    const double lx = std::log(x);
    probe.asymptotic = -kTwoPi / (x * lx * lx);
    probe.ratio = probe.finite_difference / probe.asymptotic;
    return probe;
}

// Third central difference; g''' ~ 2pi/(x^2 log^2 x) > 0.
inline double g_third_difference(double x, double xi = 0.0) {
    const GFunction g(xi);
    const double h = x * 2e-4;
    return (g(x + 2 * h) - 2 * g(x + h) + 2 * g(x - h) - g(x - 2 * h)) / (2 * h * h * h);
}

// Exact second derivative of the inverse of the main term (xi = 0 case),
// from the inverse-function rule: with L = log(t/2pi), t'' = -4pi^2/(L^3 t).
inline double t_second_derivative_exact(double x, double counting_constant = kConstG) {
    const double t = solve_main_term(x, counting_constant);
    const double L = std::log(t / kTwoPi);
    return -4.0 * kPi * kPi / (L * L * L * t);
}

// ---------------------------------------------------------------------------
// PredictedGrid: per-index records (t_k, sigma_k) for k in [k_lo, k_hi].
// ---------------------------------------------------------------------------
struct PredictedGrid {
    std::int64_t k_lo = 1;
    double xi = 0.0;
    double counting_constant = kConstZeroGrid;
    std::vector<double> t;      // t[k - k_lo]
    std::vector<double> sigma;  // sigma[k - k_lo]

    std::int64_t k_hi() const { return k_lo + static_cast<std::int64_t>(t.size()) - 1; }
    bool covers(std::int64_t k) const { return k >= k_lo && k <= k_hi(); }

    double t_of(std::int64_t k) const { return t[static_cast<std::size_t>(k - k_lo)]; }
    double sigma_of_k(std::int64_t k) const { return sigma[static_cast<std::size_t>(k - k_lo)]; }
    /// Evaluation point g_k = t_k + xi sigma_k.
    double g_of(std::int64_t k) const { return t_of(k) + xi * sigma_of_k(k); }
};

inline PredictedGrid build_grid(std::int64_t k_lo, std::int64_t k_hi, double xi = 0.0,
                                double counting_constant = kConstZeroGrid) {
    if (k_lo < 1 || k_hi < k_lo) throw std::domain_error("build_grid: bad index range");
    PredictedGrid grid;
    grid.k_lo = k_lo;
    grid.xi = xi;
    grid.counting_constant = counting_constant;
    const std::size_t n = static_cast<std::size_t>(k_hi - k_lo + 1);
    grid.t.resize(n);
    grid.sigma.resize(n);
    parallel_chunks(0, n, [&](std::size_t, std::size_t lo, std::size_t hi) {
        double hint = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            const std::int64_t k = k_lo + static_cast<std::int64_t>(i);
            const double tk = solve_main_term(static_cast<double>(k) - 0.5, counting_constant, hint);
            hint = tk;
            grid.t[i] = tk;
            grid.sigma[i] = sigma_of(tk);
        }
    }, 4096);
    return grid;
}

}  // namespace zetafluct
