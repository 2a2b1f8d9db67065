#ifndef KRUEHR_BINOMIAL_HPP
#define KRUEHR_BINOMIAL_HPP

// Exact checks of the two binomial-sum identities attached to the
// Kimura-Ruehr identity:
//   sum_{0<=j<=n} 3^j C(3n-j, 2n)   = sum_{0<=j<=2n} (-3)^j C(3n-j, n)
//   sum_{0<=j<=n} 2^j C(3n+1, n-j)  = sum_{0<=j<=2n} (-4)^j C(3n+1, n+1+j)

#include "kruehr/exactnum.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace kruehr {

/// C(m, k), zero outside 0 <= k <= m.
inline BigInt binom(long m, long k)
{
    if (m < 0) throw std::invalid_argument("binomial coefficient with negative m");
    if (k < 0 || k > m) return BigInt(0);
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(k));
    return out;
}

enum class BinomialIdentity { eq2, eq3 };

inline std::string to_string(BinomialIdentity id) { return id == BinomialIdentity::eq2 ? "binomial_eq2" : "binomial_eq3"; }

struct IdentitySides {
    BinomialIdentity identity = BinomialIdentity::eq2;
    long n = 0;
    BigInt lhs;
    BigInt rhs;
    bool equal = false;
};

namespace detail {

// C(m - 1, r) from C(m, r).
inline void step_row_down(BigInt& c, long m, long r)
{
    c *= static_cast<unsigned long>(m - r);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(m));
}

} // namespace detail

/// Both sides of the first identity. Terms are generated by walking Pascal
/// rows rather than recomputing each coefficient.
inline IdentitySides eq2_sides(long n)
{
    if (n < 0) throw std::invalid_argument("identity index must be nonnegative");
    IdentitySides out{BinomialIdentity::eq2, n, BigInt(0), BigInt(0), false};
    // lhs: j = 0..n, C(3n - j, 2n); the coefficient vanishes once 3n - j < 2n, never here.
    BigInt c = binom(3 * n, 2 * n);
    BigInt p(1);
    for (long j = 0; j <= n; ++j) {
        out.lhs += p * c;
        p *= 3;
        if (j < n) detail::step_row_down(c, 3 * n - j, 2 * n);
    }
    // rhs: j = 0..2n, C(3n - j, n)
    c = binom(3 * n, n);
    p = 1;
    for (long j = 0; j <= 2 * n; ++j) {
        out.rhs += p * c;
        p *= -3;
        if (j < 2 * n) detail::step_row_down(c, 3 * n - j, n);
    }
    out.equal = out.lhs == out.rhs;
    return out;
}

inline IdentitySides eq3_sides(long n)
{
    if (n < 0) throw std::invalid_argument("identity index must be nonnegative");
    IdentitySides out{BinomialIdentity::eq3, n, BigInt(0), BigInt(0), false};
    const long top = 3 * n + 1;
    // lhs: j = 0..n, C(top, n - j); C(N, r - 1) = C(N, r) r / (N - r + 1)
    BigInt c = binom(top, n);
    BigInt p(1);
    for (long j = 0; j <= n; ++j) {
        out.lhs += p * c;
        p *= 2;
        const long r = n - j;
        if (r > 0) {
            c *= static_cast<unsigned long>(r);
            mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(top - r + 1));
        }
    }
    // rhs: j = 0..2n, C(top, n + 1 + j); C(N, r + 1) = C(N, r) (N - r) / (r + 1)
    c = binom(top, n + 1);
    p = 1;
    for (long j = 0; j <= 2 * n; ++j) {
        out.rhs += p * c;
        p *= -4;
        const long r = n + 1 + j;
        if (r < top) {
            c *= static_cast<unsigned long>(top - r);
            mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(r + 1));
        } else {
            c = 0;
        }
    }
    out.equal = out.lhs == out.rhs;
    return out;
}

/// Records for both identities, ordered by (identity, n).
inline std::vector<IdentitySides> sweep(long n_max)
{
    if (n_max < 0) throw std::invalid_argument("sweep bound must be nonnegative");
    std::vector<IdentitySides> out;
    out.reserve(2 * static_cast<std::size_t>(n_max + 1));
    for (long n = 0; n <= n_max; ++n) out.push_back(eq2_sides(n));
    for (long n = 0; n <= n_max; ++n) out.push_back(eq3_sides(n));
    return out;
}

} // namespace kruehr

#endif
