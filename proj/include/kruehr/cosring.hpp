#ifndef KRUEHR_COSRING_HPP
#define KRUEHR_COSRING_HPP

// Exact arithmetic in Q[cos(pi/n)].
//
// Elements are rational polynomials in the generator c = cos(pi/n), reduced
// modulo T_n(X) + 1, which vanishes at c because T_n(cos(pi/n)) = cos(pi) = -1.
// T_n + 1 is not irreducible (for n = 4 it is 2(2X^2 - 1)^2), so a nonzero
// representative can still denote the value zero. Equality is therefore decided
// on values: the representative's gcd with the modulus is tested for a root
// inside an interval that isolates c among the roots of the modulus.

#include "kruehr/chebyshev.hpp"
#include "kruehr/exactnum.hpp"
#include "kruehr/realnum.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace kruehr {

class RingElem;

class CosRing : public std::enable_shared_from_this<CosRing> {
public:
    /// Use make(); the constructor is public only for make_shared.
    struct Token {
        explicit Token() = default;
    };

    CosRing(Token, int n) : n_(n), modulus_(chebyshev_T(n) + RatPoly{1}), squarefree_(squarefree_part(modulus_)), sturm_(squarefree_)
    {
        isolate();
    }

    static std::shared_ptr<const CosRing> make(int n)
    {
        if (n < 2) throw std::invalid_argument("cosine ring requires n >= 2");
        return std::make_shared<const CosRing>(Token{}, n);
    }

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] const RatPoly& modulus() const { return modulus_; }
    [[nodiscard]] const RatPoly& squarefree_modulus() const { return squarefree_; }
    [[nodiscard]] const BigRat& isolating_lo() const { return lo_; }
    [[nodiscard]] const BigRat& isolating_hi() const { return hi_; }

    /// Representative of degree < n.
    [[nodiscard]] RatPoly reduce(const RatPoly& p) const
    {
        if (p.degree() < n_) return p;
        return divmod(p, modulus_).second;
    }

    /// Ball containing cos(pi/n).
    [[nodiscard]] BigReal generator_real(Precision prec) const
    {
        return cos(pi(prec + 8) / BigReal::from_int(n_, prec + 8)).with_precision(prec);
    }

    /// Whether cos(pi/n) is a root of p.
    [[nodiscard]] bool vanishes_at_generator(const RatPoly& p) const
    {
        if (p.is_zero()) return true;
        const RatPoly g = gcd(p, modulus_);
        if (g.degree() == 0) return false;
        // Roots of g are roots of the modulus, and the isolating interval holds
        // exactly one of those (the generator), never at an endpoint.
        return sturm_count(squarefree_part(g), lo_, hi_) > 0;
    }

    [[nodiscard]] RingElem element(const RatPoly& rep) const;
    [[nodiscard]] RingElem constant(const BigRat& q) const;
    [[nodiscard]] RingElem generator() const;

private:
    // cos(pi/n) is the largest root of T_n + 1 (roots are cos((2k+1)pi/n)).
    // Bracket it from a 64-bit enclosure, then bisect toward it until the
    // bracket holds no other root.
    void isolate()
    {
        const BigReal c = generator_real(128);
        detail::Mpfr lo(64), hi(64), slack(64);
        mpfr_set_ui_2exp(slack.get(), 1, -60, MPFR_RNDU);
        c.lower(lo.get());
        c.upper(hi.get());
        mpfr_sub(lo.get(), lo.get(), slack.get(), MPFR_RNDD);
        mpfr_add(hi.get(), hi.get(), slack.get(), MPFR_RNDU);
        mpfr_get_q(lo_.get_mpq_t(), lo.get());
        mpfr_get_q(hi_.get_mpq_t(), hi.get());
        const BigRat step = make_rat(BigInt(1), BigInt(BigInt(1) << 62));
        nudge_off_root(lo_, -step);
        nudge_off_root(hi_, step);
        const BigRat above(2);
        if (sturm_.count(lo_, hi_) < 1 || sturm_.count(hi_, above) != 0)
            throw std::logic_error("initial bracket misses cos(pi/n)");
        while (sturm_.count(lo_, hi_) > 1) {
            BigRat mid = (lo_ + hi_) / 2;
            if (sturm_.sign_of_base(mid) == 0) mid = (lo_ + 2 * hi_) / 3;
            if (sturm_.count(mid, hi_) >= 1)
                lo_ = mid;
            else
                hi_ = mid;
        }
    }

    void nudge_off_root(BigRat& v, const BigRat& step) const
    {
        while (sturm_.sign_of_base(v) == 0) v += step;
    }

    int n_;
    RatPoly modulus_;
    RatPoly squarefree_;
    SturmSequence sturm_;
    BigRat lo_;
    BigRat hi_;
};

using CosRingPtr = std::shared_ptr<const CosRing>;

inline CosRingPtr ring_new(int n) { return CosRing::make(n); }

/// Element of Q[cos(pi/n)]; value semantics, shares its ring.
class RingElem {
public:
    RingElem(CosRingPtr ring, const RatPoly& rep) : ring_(std::move(ring)), rep_(ring_->reduce(rep)) {}

    [[nodiscard]] const CosRingPtr& ring() const { return ring_; }
    [[nodiscard]] const RatPoly& rep() const { return rep_; }

    /// Value-level zero test (exact).
    [[nodiscard]] bool is_zero() const { return ring_->vanishes_at_generator(rep_); }

    /// Ball containing rep(cos(pi/n)).
    [[nodiscard]] BigReal eval_real(Precision prec = kDefaultPrecision) const
    {
        if (prec < 16) throw std::invalid_argument("precision must be at least 16 bits");
        const Precision work = prec + 32 + 2 * static_cast<Precision>(ring_->n());
        const BigReal c = ring_->generator_real(work);
        BigReal acc(work);
        const auto cs = rep_.coeffs();
        for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * c + BigReal::from_rat(*it, work);
        return acc.with_precision(prec);
    }

    /// The rational value of this element if it is rational with a small
    /// denominator; found from a numeric guess and confirmed exactly.
    [[nodiscard]] std::optional<BigRat> rational_value() const
    {
        if (rep_.degree() <= 0) return rep_.coeff(0);
        const BigReal v = eval_real(192);
        // Continued fraction of the midpoint; candidates confirmed by the zero test.
        detail::Mpfr x(192);
        mpfr_set(x.get(), v.mid(), MPFR_RNDN);
        BigInt h_prev(1), h(0), k_prev(0), k(1);
        detail::Mpfr frac(192);
        for (int step = 0; step < 40; ++step) {
            BigInt a;
            mpfr_get_z(a.get_mpz_t(), x.get(), MPFR_RNDD);
            BigInt h_next = a * h_prev + h;
            BigInt k_next = a * k_prev + k;
            h = h_prev;
            k = k_prev;
            h_prev = h_next;
            k_prev = k_next;
            if (k_prev > BigInt("1000000000000")) break;
            const BigRat cand = make_rat(h_prev, k_prev);
            if (v.contains(cand) && (*this - ring_->constant(cand)).is_zero()) return cand;
            mpfr_sub_z(frac.get(), x.get(), a.get_mpz_t(), MPFR_RNDN);
            if (mpfr_zero_p(frac.get()) || mpfr_get_exp(frac.get()) < -150) break;
            mpfr_ui_div(x.get(), 1, frac.get(), MPFR_RNDN);
        }
        return std::nullopt;
    }

    friend RingElem operator+(const RingElem& x, const RingElem& y)
    {
        same_ring(x, y);
        return RingElem(x.ring_, x.rep_ + y.rep_, Reduced{});
    }

    friend RingElem operator-(const RingElem& x, const RingElem& y)
    {
        same_ring(x, y);
        return RingElem(x.ring_, x.rep_ - y.rep_, Reduced{});
    }

    friend RingElem operator-(const RingElem& x) { return RingElem(x.ring_, -x.rep_, Reduced{}); }

    friend RingElem operator*(const RingElem& x, const RingElem& y)
    {
        same_ring(x, y);
        return RingElem(x.ring_, x.ring_->reduce(x.rep_ * y.rep_), Reduced{});
    }

    friend RingElem operator*(const RingElem& x, const BigRat& s) { return RingElem(x.ring_, x.rep_ * s, Reduced{}); }
    friend RingElem operator*(const BigRat& s, const RingElem& x) { return x * s; }

    friend RingElem operator/(const RingElem& x, const BigRat& s)
    {
        if (s == 0) throw std::domain_error("ring element divided by rational zero");
        return RingElem(x.ring_, x.rep_ * (1 / s), Reduced{});
    }

    friend RingElem operator+(const RingElem& x, const BigRat& s) { return x + x.ring_->constant(s); }
    friend RingElem operator-(const RingElem& x, const BigRat& s) { return x - x.ring_->constant(s); }

    /// Value equality.
    [[nodiscard]] bool value_equals(const RingElem& o) const { return (*this - o).is_zero(); }

private:
    struct Reduced {};
    RingElem(CosRingPtr ring, RatPoly rep, Reduced) : ring_(std::move(ring)), rep_(std::move(rep)) {}

    static void same_ring(const RingElem& x, const RingElem& y)
    {
        if (x.ring_->n() != y.ring_->n())
            throw std::invalid_argument("ring elements from Q[cos(pi/" + std::to_string(x.ring_->n()) + ")] and Q[cos(pi/" +
                                        std::to_string(y.ring_->n()) + ")] cannot be combined");
    }

    CosRingPtr ring_;
    RatPoly rep_;
};

inline RingElem CosRing::element(const RatPoly& rep) const { return RingElem(shared_from_this(), rep); }
inline RingElem CosRing::constant(const BigRat& q) const { return element(RatPoly::constant(q)); }
inline RingElem CosRing::generator() const { return element(RatPoly::x()); }

/// p(x) for a rational polynomial p and ring element x, by Horner's scheme.
inline RingElem eval_at(const RatPoly& p, const RingElem& x)
{
    const auto& ring = *x.ring();
    RingElem acc = ring.constant(BigRat(0));
    const auto cs = p.coeffs();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

} // namespace kruehr

#endif
