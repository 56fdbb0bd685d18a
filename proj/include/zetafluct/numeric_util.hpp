#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace zetafluct {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;

// Kahan compensated accumulator.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

struct KahanComplexSum {
    KahanSum re, im;
    void add(std::complex<double> v) {
        re.add(v.real());
        im.add(v.imag());
    }
    std::complex<double> value() const { return {re.value(), im.value()}; }
};

// sin(x) for |x| < 2^38, accurate to ~1e-13 absolute.  Branch-free so the
// compiler can vectorize summation loops over millions of phases; libm sin
// is the bottleneck otherwise.
inline double fast_sin(double x) {
    // reduce to r in [-pi, pi] with a two-part 2*pi
    constexpr double inv_twopi = 0.15915494309189534;
    constexpr double twopi_hi = 6.283185307179586;   // high part
    constexpr double twopi_lo = 2.4492935982947064e-16;
    const double k = std::nearbyint(x * inv_twopi);
    double r = x - k * twopi_hi;
    r -= k * twopi_lo;
    // fold [-pi,pi] onto [-pi/2, pi/2]: sin(r) = sign(r) * sin(min(|r|, pi-|r|))
    const double a = std::fabs(r);
    const double m = std::fmin(a, kPi - a);
    const double z = m * m;
    // odd Taylor polynomial through m^17 (max error ~ 4e-14 on [0, pi/2])
    double p = 2.8114572543455208e-15;
    p = -7.6471637318198165e-13 + z * p;
    p = 1.6059043836821613e-10 + z * p;
    p = -2.5052108385441720e-8 + z * p;
    p = 2.7557319223985893e-6 + z * p;
    p = -1.9841269841269841e-4 + z * p;
    p = 8.3333333333333333e-3 + z * p;
    p = -0.16666666666666666 + z * p;
    const double s = m + m * z * p;
    return std::copysign(s, r);
}

inline double fast_cos(double x) { return fast_sin(x + kPi / 2); }

// FNV-1a, used to fingerprint cache files in report headers.
inline std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t seed = 1469598103934665603ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace zetafluct
