#ifndef KRUEHR_CHEBYSHEV_HPP
#define KRUEHR_CHEBYSHEV_HPP

#include "kruehr/exactnum.hpp"

#include <stdexcept>

namespace kruehr {

/// Chebyshev polynomial of the first kind, T_0 = 1, T_1 = X, T_{k+2} = 2X T_{k+1} - T_k.
inline RatPoly chebyshev_T(int n)
{
    if (n < 0) throw std::invalid_argument("Chebyshev degree must be nonnegative");
    RatPoly prev{1};
    if (n == 0) return prev;
    RatPoly cur{0, 1};
    const RatPoly two_x{0, 2};
    for (int k = 1; k < n; ++k) {
        RatPoly next = two_x * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// V_n with V_n(X^2) = T_n(X)^2. T_n^2 is even, so its odd coefficients vanish
/// and the even ones become the coefficients of V_n.
inline RatPoly build_V(int n)
{
    if (n < 1) throw std::invalid_argument("V_n requires n >= 1");
    const RatPoly t = chebyshev_T(n);
    const RatPoly sq = t * t;
    const auto cs = sq.coeffs();
    std::vector<BigRat> out((cs.size() + 1) / 2);
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (i % 2 == 1) {
            if (cs[i] != 0) throw std::logic_error("T_n^2 has a nonzero odd coefficient");
            continue;
        }
        out[i / 2] = cs[i];
    }
    return RatPoly(std::move(out));
}

} // namespace kruehr

#endif
