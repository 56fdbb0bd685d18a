#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace zetafluct {

// Ascending primes <= limit.  Bit sieve over odd numbers; limit 1e9 costs a
// few seconds and ~270 MB including the materialized prime list.
struct PrimeSieve {
    std::uint64_t limit = 0;
    std::vector<std::uint32_t> primes;

    std::size_t count() const { return primes.size(); }
    /// index of the first prime > bound (prefix [0, idx) holds primes <= bound)
    std::size_t prefix_upto(std::uint64_t bound) const {
        std::size_t lo = 0, hi = primes.size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (primes[mid] <= bound) lo = mid + 1; else hi = mid;
        }
        return lo;
    }
};

inline PrimeSieve make_prime_sieve(std::uint64_t limit) {
    if (limit > 4000000000ULL) throw std::domain_error("make_prime_sieve: limit above 4e9");
    PrimeSieve sieve;
    sieve.limit = limit;
    if (limit < 2) return sieve;

    // bits over odd numbers: bit i <-> 2i+1; bit set = composite
    const std::uint64_t nodd = limit / 2 + 1;
    std::vector<std::uint64_t> composite((nodd + 63) / 64, 0);
    auto set_bit = [&](std::uint64_t i) { composite[i >> 6] |= (1ULL << (i & 63)); };
    auto get_bit = [&](std::uint64_t i) { return (composite[i >> 6] >> (i & 63)) & 1ULL; };
    set_bit(0);  // 1 is not prime

    const std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
    for (std::uint64_t p = 3; p <= root; p += 2) {
        if (get_bit(p / 2)) continue;
        for (std::uint64_t q = p * p; q <= limit; q += 2 * p) set_bit(q / 2);
    }

    // rough upper bound on pi(limit) for one-shot allocation
    const double dl = static_cast<double>(std::max<std::uint64_t>(limit, 16));
    sieve.primes.reserve(static_cast<std::size_t>(1.2 * dl / std::log(dl)) + 16);
    sieve.primes.push_back(2);
    for (std::uint64_t i = 1; 2 * i + 1 <= limit; ++i)
        if (!get_bit(i)) sieve.primes.push_back(static_cast<std::uint32_t>(2 * i + 1));
    return sieve;
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

}  // namespace zetafluct
