#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "zetafluct/numeric_util.hpp"

namespace zetafluct {

// Heights where double precision keeps the phase theta(t) accurate enough
// for reliable signs of Z.
inline constexpr double kMaxHeight = 1e8;

// Below this ordinate Z(t) is evaluated through an Euler-Maclaurin zeta;
// above it the Riemann-Siegel expansion with C0..C2 takes over.  The
// asymptotic expansion alone is ~1e-4 at t = 14 which is nowhere near the
// 1e-8 agreement required against reference tables for the low zeros.
inline constexpr double kRiemannSiegelMinT = 500.0;

/// Riemann-Siegel phase theta(t), asymptotic series through the t^-5 term.
/// Absolute error < 1e-9 for 10 <= t <= 1e8.
inline double riemann_siegel_theta(double t) {
    if (!(t >= 10.0)) throw std::domain_error("riemann_siegel_theta: requires t >= 10");
    const double lg = std::log(t / kTwoPi);
    return 0.5 * t * lg - 0.5 * t - kPi / 8.0
        + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t * t)
        + 31.0 / (80640.0 * t * t * t * t * t);
}

/// theta'(t) = (1/2) log(t/2pi) - 1/(48 t^2) - ...
inline double riemann_siegel_theta_prime(double t) {
    const double t2 = t * t;
    return 0.5 * std::log(t / kTwoPi) - 1.0 / (48.0 * t2) - 7.0 / (1920.0 * t2 * t2);
}

namespace detail {

// Taylor coefficients of Psi(p) = cos(2pi(p^2 - p - 1/16)) / cos(2pi p)
// around a quarter point a (1/4 or 3/4).  Both numerator and denominator
// vanish there, so one power of h is deflated before dividing the series;
// the quotient is entire and the expansion converges on all of [0, 1].
template <int M>
inline std::array<double, M> psi_taylor_at(double a) {
    // jets of cos(u(h)) for polynomial u via the c' = -u's, s' = u'c recurrences
    std::array<double, M + 2> u{}, v{}, cn{}, sn{}, cd{}, sd{};
    u[0] = kTwoPi * (a * a - a - 1.0 / 16.0);
    u[1] = kTwoPi * (2.0 * a - 1.0);
    u[2] = kTwoPi;
    v[0] = kTwoPi * a;
    v[1] = kTwoPi;
    auto cos_jet = [](const std::array<double, M + 2>& w, std::array<double, M + 2>& c,
                      std::array<double, M + 2>& s) {
        c[0] = std::cos(w[0]);
        s[0] = std::sin(w[0]);
        for (int k = 1; k < M + 2; ++k) {
            double ck = 0.0, sk = 0.0;
            for (int j = 1; j <= k && j <= 2; ++j) {  // w has degree 2
                ck -= j * w[j] * s[k - j];
                sk += j * w[j] * c[k - j];
            }
            c[k] = ck / k;
            s[k] = sk / k;
        }
    };
    cos_jet(u, cn, sn);
    cos_jet(v, cd, sd);
    // deflate the common simple zero at h = 0 (constant terms are
    // cos(odd*pi/2) = 0 up to rounding noise; drop them)
    std::array<double, M + 1> num{}, den{};
    for (int k = 0; k <= M; ++k) { num[k] = cn[k + 1]; den[k] = cd[k + 1]; }
    std::array<double, M> q{};
    for (int k = 0; k < M; ++k) {
        double acc = num[k];
        for (int j = 1; j <= k; ++j) acc -= den[j] * q[k - j];
        q[k] = acc / den[0];
    }
    return q;
}

// Psi and derivatives 0..6 evaluated at p in [0, 1).
inline std::array<double, 7> psi_derivatives(double p) {
    constexpr int M = 28;
    static const std::array<double, M> q_quarter = psi_taylor_at<M>(0.25);
    static const std::array<double, M> q_three_quarter = psi_taylor_at<M>(0.75);
    const bool lower = std::fabs(p - 0.25) <= std::fabs(p - 0.75);
    const auto& q = lower ? q_quarter : q_three_quarter;
    const double h0 = p - (lower ? 0.25 : 0.75);
    std::array<double, 7> out{};
    for (int d = 0; d <= 6; ++d) {
        double val = 0.0;
        for (int k = M - 1; k >= d; --k) {
            double fall = 1.0;
            for (int i = k; i > k - d; --i) fall *= i;
            val = val * h0 + q[k] * fall;  // Horner in h0 over k-d exponents
        }
        // Horner above accumulates sum_{k>=d} q_k * k!/(k-d)! * h0^{k-d}
        out[d] = val;
    }
    return out;
}

/// Riemann-Siegel Z with correction terms C0..C2.
inline double hardy_z_riemann_siegel(double t) {
    const double tau = std::sqrt(t / kTwoPi);
    const int m = static_cast<int>(tau);
    const double p = tau - m;
    const double th = riemann_siegel_theta(t);

    double main = 0.0;
    for (int n = 1; n <= m; ++n)
        main += std::cos(th - t * std::log(static_cast<double>(n))) / std::sqrt(static_cast<double>(n));
    main *= 2.0;

    const auto psi = psi_derivatives(p);
    const double pi2 = kPi * kPi;
    const double c0 = psi[0];
    const double c1 = -psi[3] / (96.0 * pi2);
    const double c2 = psi[2] / (64.0 * pi2) + psi[6] / (18432.0 * pi2 * pi2);

    const double z = std::sqrt(kTwoPi / t);
    // remainder prefactor (-1)^{m+1}
    const double corr = ((m % 2 == 0) ? -1.0 : 1.0) * std::sqrt(z) * (c0 + z * (c1 + z * c2));
    return main + corr;
}

inline constexpr std::array<double, 12> kBernoulli2k = {
    1.0 / 6,       -1.0 / 30,      1.0 / 42,        -1.0 / 30,
    5.0 / 66,      -691.0 / 2730,  7.0 / 6,         -3617.0 / 510,
    43867.0 / 798, -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730};

/// Euler-Maclaurin zeta(1/2 + it); near machine precision for t <= ~1000.
inline std::complex<double> zeta_euler_maclaurin(double t) {
    const std::complex<double> s(0.5, t);
    const int N = std::max(24, static_cast<int>(1.2 * std::fabs(t)) + 8);
    std::complex<double> acc(0.0, 0.0);
    for (int n = 1; n < N; ++n) {
        const double ln = std::log(static_cast<double>(n));
        acc += std::polar(std::exp(-0.5 * ln), -t * ln);
    }
    const double lnN = std::log(static_cast<double>(N));
    const std::complex<double> Npow_minus_s = std::polar(std::exp(-0.5 * lnN), -t * lnN);
    acc += std::polar(std::exp(0.5 * lnN), -t * lnN) / (s - 1.0);  // N^{1-s}/(s-1)
    acc += 0.5 * Npow_minus_s;

    std::complex<double> poch = s;
    double fact = 2.0;  // (2k)!
    std::complex<double> Nfac = Npow_minus_s / static_cast<double>(N);  // N^{-s-1}
    const double invN2 = 1.0 / (static_cast<double>(N) * static_cast<double>(N));
    for (std::size_t k = 1; k <= kBernoulli2k.size(); ++k) {
        acc += kBernoulli2k[k - 1] / fact * poch * Nfac;
        poch *= (s + std::complex<double>(2.0 * k - 1.0)) * (s + std::complex<double>(2.0 * k));
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        Nfac *= invN2;
    }
    return acc;
}

}  // namespace detail

/// Hardy's Z(t) = e^{i theta(t)} zeta(1/2 + it); real-valued, vanishing
/// exactly at the ordinates of critical-line zeros.
inline double hardy_z(double t) {
    if (!(t >= 10.0)) throw std::domain_error("hardy_z: requires t >= 10");
    if (t > kMaxHeight) throw std::domain_error("hardy_z: t above supported height 1e8");
    if (t < kRiemannSiegelMinT) {
        const double th = riemann_siegel_theta(t);
        const std::complex<double> z = detail::zeta_euler_maclaurin(t);
        return std::cos(th) * z.real() - std::sin(th) * z.imag();
    }
    return detail::hardy_z_riemann_siegel(t);
}

}  // namespace zetafluct
