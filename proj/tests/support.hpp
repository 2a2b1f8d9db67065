#ifndef KRUEHR_TESTS_SUPPORT_HPP
#define KRUEHR_TESTS_SUPPORT_HPP

// Hand-rolled generators for the property tests. Seeds are fixed so failures
// reproduce; KRUEHR_SEED overrides the base seed.

#include "kruehr/exactnum.hpp"
#include "kruehr/realnum.hpp"

#include <cstdint>
#include <cstdlib>
#include <random>
#include <vector>

namespace kt {

inline std::uint64_t base_seed()
{
    if (const char* s = std::getenv("KRUEHR_SEED")) return std::strtoull(s, nullptr, 10);
    return 20240917ULL;
}

class Gen {
public:
    explicit Gen(std::uint64_t salt = 0) : rng_(base_seed() ^ (salt * 0x9E3779B97F4A7C15ULL)) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    bool coin() { return integer(0, 1) == 1; }

    kruehr::BigRat rational(long num_bound = 1000, long den_bound = 1000)
    {
        return kruehr::make_rat(kruehr::BigInt(integer(-num_bound, num_bound)), kruehr::BigInt(integer(1, den_bound)));
    }

    kruehr::BigRat nonzero_rational(long num_bound = 1000, long den_bound = 1000)
    {
        kruehr::BigRat q;
        do q = rational(num_bound, den_bound);
        while (q == 0);
        return q;
    }

    kruehr::RatPoly poly(int max_degree, long num_bound = 20, long den_bound = 6)
    {
        const int d = static_cast<int>(integer(0, max_degree));
        std::vector<kruehr::BigRat> cs;
        for (int i = 0; i <= d; ++i) cs.push_back(rational(num_bound, den_bound));
        return kruehr::RatPoly(std::move(cs));
    }

    kruehr::RatPoly nonzero_poly(int max_degree, long num_bound = 20, long den_bound = 6)
    {
        kruehr::RatPoly p;
        do p = poly(max_degree, num_bound, den_bound);
        while (p.is_zero());
        return p;
    }

private:
    std::mt19937_64 rng_;
};

/// Exact rational enclosure test with a readable failure message.
inline bool contains(const kruehr::BigReal& ball, const kruehr::BigRat& q) { return ball.contains(q); }

} // namespace kt

#endif
