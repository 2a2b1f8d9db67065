#ifndef KRUEHR_CONSTRUCT_HPP
#define KRUEHR_CONSTRUCT_HPP

// The constants a_n, b_n, the endpoints u = (1 - b)/a and v = -b/a, and the
// polynomial W_n(X) = V_n(a X + b), built exactly over Q[cos(pi/n)] and as
// coefficient balls.
//
// With c = cos(pi/n) and cos(2 pi/n) = 2c^2 - 1:
//   a = (2c^2 - c - 1) / 2,   b = (c + 1) / 2.

#include "kruehr/chebyshev.hpp"
#include "kruehr/cosring.hpp"
#include "kruehr/realnum.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace kruehr {

/// Default n up to which numeric W_n coefficients are cross-checked against the exact ones.
inline constexpr int kDefaultExactnessCap = 24;

struct Constants {
    int n = 0;
    std::optional<RingElem> a;  // present when built from a ring
    std::optional<RingElem> b;
    BigReal a_real;
    BigReal b_real;
    BigReal u_real;
    BigReal v_real;
};

namespace detail {

inline void fill_endpoints(Constants& k)
{
    const Precision p = k.a_real.precision();
    const BigReal one = BigReal::from_int(1, p);
    k.u_real = (one - k.b_real) / k.a_real;
    k.v_real = -k.b_real / k.a_real;
}

} // namespace detail

/// Numeric constants from a ball enclosure of cos(pi/n).
inline Constants constants_real(int n, Precision prec = kDefaultPrecision)
{
    if (n < 2) throw std::invalid_argument("a_n, b_n are defined for n >= 2");
    const Precision work = prec + 16;
    const BigReal c = cos(pi(work) / BigReal::from_int(n, work));
    const BigReal one = BigReal::from_int(1, work);
    Constants k;
    k.n = n;
    k.a_real = ((BigReal::from_int(2, work) * sqr(c) - c - one).mul_2si(-1)).with_precision(prec);
    k.b_real = ((c + one).mul_2si(-1)).with_precision(prec);
    if (!k.a_real.is_negative()) throw std::logic_error("a_n ball is not certified negative");
    detail::fill_endpoints(k);
    return k;
}

/// Exact constants in the ring, numeric fields at `prec`. Certifies a < 0.
inline Constants constants_exact(const CosRingPtr& ring, Precision prec = kDefaultPrecision)
{
    const RingElem c = ring->generator();
    Constants k;
    k.n = ring->n();
    k.a = (c * c * BigRat(2) - c - BigRat(1)) / BigRat(2);
    k.b = (c + BigRat(1)) / BigRat(2);
    k.a_real = k.a->eval_real(prec);
    k.b_real = k.b->eval_real(prec);
    if (k.a->is_zero() || !k.a_real.is_negative()) throw std::logic_error("a_n is not certified negative");
    detail::fill_endpoints(k);
    return k;
}

/// Balls for u = (1 - b)/a and v = -b/a, recomputed at `prec`.
inline std::pair<BigReal, BigReal> endpoints_real(const Constants& k, Precision prec = kDefaultPrecision)
{
    if (k.a) {
        const BigReal a = k.a->eval_real(prec + 16);
        const BigReal b = k.b->eval_real(prec + 16);
        const BigReal one = BigReal::from_int(1, prec + 16);
        return {((one - b) / a).with_precision(prec), (-b / a).with_precision(prec)};
    }
    const Constants fresh = constants_real(k.n, prec);
    return {fresh.u_real, fresh.v_real};
}

/// Polynomial with coefficients in one cosine ring; the leading coefficient is
/// nonzero as a value.
class FieldPoly {
public:
    FieldPoly(CosRingPtr ring, std::vector<RingElem> coeffs) : ring_(std::move(ring)), coeffs_(std::move(coeffs))
    {
        for (const auto& c : coeffs_)
            if (c.ring()->n() != ring_->n()) throw std::invalid_argument("FieldPoly coefficients from mixed rings");
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    [[nodiscard]] const CosRingPtr& ring() const { return ring_; }
    [[nodiscard]] const std::vector<RingElem>& coeffs() const { return coeffs_; }
    [[nodiscard]] int degree() const { return coeffs_.empty() ? kZeroDegree : static_cast<int>(coeffs_.size()) - 1; }

    [[nodiscard]] RingElem coeff(std::size_t i) const
    {
        return i < coeffs_.size() ? coeffs_[i] : ring_->constant(BigRat(0));
    }

    [[nodiscard]] RingElem eval(const RingElem& x) const
    {
        RingElem acc = ring_->constant(BigRat(0));
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

private:
    CosRingPtr ring_;
    std::vector<RingElem> coeffs_;
};

/// W_n = V_n(a X + b) with exact ring coefficients.
inline FieldPoly build_W_exact(const CosRingPtr& ring)
{
    const int n = ring->n();
    const RatPoly v = build_V(n);
    const Constants k = constants_exact(ring, 64);
    // Horner over the linear polynomial a X + b.
    std::vector<RingElem> acc;
    const auto vc = v.coeffs();
    for (auto it = vc.rbegin(); it != vc.rend(); ++it) {
        std::vector<RingElem> next(acc.size() + 1, ring->constant(BigRat(0)));
        for (std::size_t j = 0; j < acc.size(); ++j) {
            next[j] = next[j] + acc[j] * *k.b;
            next[j + 1] = next[j + 1] + acc[j] * *k.a;
        }
        next[0] = next[0] + *it;
        acc = std::move(next);
    }
    return FieldPoly(ring, std::move(acc));
}

/// Real polynomial with ball coefficients.
class RealPoly {
public:
    RealPoly() = default;
    explicit RealPoly(std::vector<BigReal> coeffs) : coeffs_(std::move(coeffs)) {}

    [[nodiscard]] const std::vector<BigReal>& coeffs() const { return coeffs_; }
    [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    [[nodiscard]] BigReal eval(const BigReal& x) const
    {
        if (coeffs_.empty()) return BigReal(x.precision());
        BigReal acc = coeffs_.back();
        for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

private:
    std::vector<BigReal> coeffs_;
};

/// Coefficient balls of W_n at `prec` bits, composed numerically from V_n and
/// the ball constants. The composition carries its own guard bits: the monomial
/// coefficients of W_n cancel heavily on [u, v].
inline RealPoly build_W_real(int n, Precision prec = kDefaultPrecision)
{
    const Precision work = prec + 3 * static_cast<Precision>(n) + 32;
    const Constants k = constants_real(n, work);
    const RatPoly v = build_V(n);
    std::vector<BigReal> acc;
    const auto vc = v.coeffs();
    for (auto it = vc.rbegin(); it != vc.rend(); ++it) {
        std::vector<BigReal> next(acc.size() + 1, BigReal(work));
        for (std::size_t j = 0; j < acc.size(); ++j) {
            next[j] += acc[j] * k.b_real;
            next[j + 1] += acc[j] * k.a_real;
        }
        next[0] += BigReal::from_rat(*it, work);
        acc = std::move(next);
    }
    for (auto& c : acc) c = c.with_precision(prec);
    return RealPoly(std::move(acc));
}

/// Numeric W_n checked coefficientwise against the exact W_n of `ring`: every
/// exact coefficient's enclosure must lie inside the numeric ball.
inline RealPoly build_W_real(const CosRingPtr& ring, Precision prec = kDefaultPrecision)
{
    RealPoly w = build_W_real(ring->n(), prec);
    const FieldPoly exact = build_W_exact(ring);
    if (exact.degree() != w.degree()) throw std::logic_error("numeric and exact W_n degrees differ");
    for (int j = 0; j <= w.degree(); ++j) {
        const BigReal e = exact.coeff(j).eval_real(2 * prec + 16 * static_cast<Precision>(ring->n()));
        if (!w.coeffs()[j].contains(e)) throw std::logic_error("numeric W_n coefficient misses the exact value");
    }
    return w;
}

/// Points x in [u, v] where W_n(x) = level, for level in [0, 1], sorted.
/// From W_n(x) = cos^2(n t) with a x + b = cos^2 t, t in [0, pi/2].
inline std::vector<BigReal> level_crossings(const Constants& k, const BigRat& level, Precision prec = kDefaultPrecision)
{
    if (level < 0 || level > 1) throw std::invalid_argument("W_n takes values in [0, 1] on [u, v]");
    const int n = k.n;
    const Precision work = prec + 16;
    const BigReal a = k.a_real.with_precision(work);
    const BigReal b = k.b_real.with_precision(work);
    const BigReal alpha = acos(sqrt(BigReal::from_rat(level, work)));
    const BigReal p = pi(work);
    const BigReal half_pi = p.mul_2si(-1);
    std::vector<BigReal> thetas;
    for (int j = 0; j <= n; ++j) {
        for (int sign : {-1, 1}) {
            BigReal theta = (BigReal::from_int(j, work) * p + BigReal::from_int(sign, work) * alpha) / BigReal::from_int(n, work);
            if (theta.is_negative() || (theta - half_pi).is_positive()) continue;
            const bool dup = std::any_of(thetas.begin(), thetas.end(), [&](const BigReal& t) { return t.overlaps(theta); });
            if (!dup) thetas.push_back(std::move(theta));
        }
    }
    std::vector<BigReal> xs;
    xs.reserve(thetas.size());
    for (const auto& t : thetas) xs.push_back(((sqr(cos(t)) - b) / a).with_precision(prec));
    std::sort(xs.begin(), xs.end(), [](const BigReal& x, const BigReal& y) { return mpfr_cmp(x.mid(), y.mid()) < 0; });
    return xs;
}

} // namespace kruehr

#endif
