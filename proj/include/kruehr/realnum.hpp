#ifndef KRUEHR_REALNUM_HPP
#define KRUEHR_REALNUM_HPP

// Midpoint-radius ball arithmetic. Centers are MPFR numbers at the working
// precision, radii are 64-bit MPFR numbers always rounded upward. Every
// operation returns a ball that contains the exact result of the operation
// applied to any points of the input balls.

#include "kruehr/exactnum.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <string>

namespace kruehr {

using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultPrecision = 256;
inline constexpr Precision kRadiusPrecision = 64;

/// Argument outside the mathematical domain of an operation (division by a
/// ball containing zero, log of a nonpositive ball, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The working precision is too small to certify a result.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

// Owns one mpfr_t; MPFR numbers are not trivially copyable.
class Mpfr {
public:
    explicit Mpfr(Precision prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Mpfr(const Mpfr& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Mpfr(Mpfr&& o) noexcept
    {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Mpfr& operator=(const Mpfr& o)
    {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Mpfr& operator=(Mpfr&& o) noexcept
    {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Mpfr() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    [[nodiscard]] mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

// Upper bound on |exact - rounded| after a rounding to nearest that reported `ternary`.
inline void add_rounding_error(mpfr_ptr rad, mpfr_srcptr mid, int ternary)
{
    if (ternary == 0) return;
    Mpfr err(kRadiusPrecision);
    if (mpfr_zero_p(mid))
        mpfr_set_ui_2exp(err.get(), 1, mpfr_get_emin(), MPFR_RNDU);
    else
        mpfr_set_ui_2exp(err.get(), 1, mpfr_get_exp(mid) - mpfr_get_prec(mid), MPFR_RNDU);
    mpfr_add(rad, rad, err.get(), MPFR_RNDU);
}

} // namespace detail

class BigReal {
public:
    explicit BigReal(Precision prec = kDefaultPrecision) : mid_(prec), rad_(kRadiusPrecision) {}

    static BigReal from_int(long v, Precision prec = kDefaultPrecision)
    {
        BigReal r(prec);
        detail::add_rounding_error(r.rad_.get(), r.mid_.get(), mpfr_set_si(r.mid_.get(), v, MPFR_RNDN));
        return r;
    }

    static BigReal from_rat(const BigRat& q, Precision prec = kDefaultPrecision)
    {
        BigReal r(prec);
        detail::add_rounding_error(r.rad_.get(), r.mid_.get(), mpfr_set_q(r.mid_.get(), q.get_mpq_t(), MPFR_RNDN));
        return r;
    }

    static BigReal from_int(const BigInt& z, Precision prec = kDefaultPrecision)
    {
        BigReal r(prec);
        detail::add_rounding_error(r.rad_.get(), r.mid_.get(), mpfr_set_z(r.mid_.get(), z.get_mpz_t(), MPFR_RNDN));
        return r;
    }

    /// Ball around the MPFR value `v` rounded to `prec` bits.
    static BigReal from_mpfr(mpfr_srcptr v, Precision prec)
    {
        BigReal r(prec);
        detail::add_rounding_error(r.rad_.get(), r.mid_.get(), mpfr_set(r.mid_.get(), v, MPFR_RNDN));
        return r;
    }

    /// Smallest ball around [lo, hi] representable at `prec`.
    static BigReal from_interval(mpfr_srcptr lo, mpfr_srcptr hi, Precision prec)
    {
        BigReal r(prec);
        detail::Mpfr sum(std::max(mpfr_get_prec(lo), mpfr_get_prec(hi)) + 1);
        mpfr_add(sum.get(), lo, hi, MPFR_RNDN);
        mpfr_div_2ui(r.mid_.get(), sum.get(), 1, MPFR_RNDN);
        detail::Mpfr d1(kRadiusPrecision);
        detail::Mpfr d2(kRadiusPrecision);
        mpfr_sub(d1.get(), hi, r.mid_.get(), MPFR_RNDU);
        mpfr_sub(d2.get(), r.mid_.get(), lo, MPFR_RNDU);
        mpfr_max(r.rad_.get(), d1.get(), d2.get(), MPFR_RNDU);
        if (mpfr_sgn(r.rad_.get()) < 0) mpfr_set_zero(r.rad_.get(), 1);
        return r;
    }

    [[nodiscard]] Precision precision() const { return mpfr_get_prec(mid_.get()); }
    [[nodiscard]] mpfr_srcptr mid() const { return mid_.get(); }
    [[nodiscard]] mpfr_srcptr rad() const { return rad_.get(); }
    [[nodiscard]] double mid_double() const { return mpfr_get_d(mid_.get(), MPFR_RNDN); }
    [[nodiscard]] double rad_double() const { return mpfr_get_d(rad_.get(), MPFR_RNDU); }
    [[nodiscard]] bool is_exact() const { return mpfr_zero_p(rad_.get()) != 0; }

    /// Ball endpoints rounded outward into `out`.
    void lower(mpfr_ptr out) const { mpfr_sub(out, mid_.get(), rad_.get(), MPFR_RNDD); }
    void upper(mpfr_ptr out) const { mpfr_add(out, mid_.get(), rad_.get(), MPFR_RNDU); }

    /// Upper bound of |x| over the ball.
    [[nodiscard]] detail::Mpfr abs_upper() const
    {
        detail::Mpfr out(precision() + 2);
        mpfr_abs(out.get(), mid_.get(), MPFR_RNDU);
        mpfr_add(out.get(), out.get(), rad_.get(), MPFR_RNDU);
        return out;
    }

    [[nodiscard]] double abs_upper_double() const { return mpfr_get_d(abs_upper().get(), MPFR_RNDU); }

    [[nodiscard]] bool is_positive() const
    {
        detail::Mpfr lo(precision() + 2);
        lower(lo.get());
        return mpfr_sgn(lo.get()) > 0;
    }

    [[nodiscard]] bool is_negative() const
    {
        detail::Mpfr hi(precision() + 2);
        upper(hi.get());
        return mpfr_sgn(hi.get()) < 0;
    }

    [[nodiscard]] bool is_nonnegative() const
    {
        detail::Mpfr lo(precision() + 2);
        lower(lo.get());
        return mpfr_sgn(lo.get()) >= 0;
    }

    [[nodiscard]] bool contains_zero() const { return !is_positive() && !is_negative(); }

    [[nodiscard]] bool contains(const BigRat& q) const
    {
        detail::Mpfr lo(precision() + 2);
        detail::Mpfr hi(precision() + 2);
        lower(lo.get());
        upper(hi.get());
        return mpfr_cmp_q(lo.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi.get(), q.get_mpq_t()) >= 0;
    }

    /// True when every point of `other` lies in this ball.
    [[nodiscard]] bool contains(const BigReal& other) const
    {
        const Precision p = std::max(precision(), other.precision()) + 2;
        detail::Mpfr lo(p), hi(p), olo(p), ohi(p);
        lower(lo.get());
        upper(hi.get());
        mpfr_sub(olo.get(), other.mid(), other.rad(), MPFR_RNDD);
        mpfr_add(ohi.get(), other.mid(), other.rad(), MPFR_RNDU);
        return mpfr_cmp(lo.get(), olo.get()) <= 0 && mpfr_cmp(ohi.get(), hi.get()) <= 0;
    }

    [[nodiscard]] bool overlaps(const BigReal& other) const
    {
        const Precision p = std::max(precision(), other.precision()) + 2;
        detail::Mpfr lo(p), hi(p), olo(p), ohi(p);
        lower(lo.get());
        upper(hi.get());
        mpfr_sub(olo.get(), other.mid(), other.rad(), MPFR_RNDD);
        mpfr_add(ohi.get(), other.mid(), other.rad(), MPFR_RNDU);
        return mpfr_cmp(lo.get(), ohi.get()) <= 0 && mpfr_cmp(olo.get(), hi.get()) <= 0;
    }

    /// |x| <= bound for every x in the ball.
    [[nodiscard]] bool abs_below(const BigRat& bound) const
    {
        return mpfr_cmp_q(abs_upper().get(), bound.get_mpq_t()) <= 0;
    }

    /// Same ball rounded to another center precision (radius grows by the rounding).
    [[nodiscard]] BigReal with_precision(Precision prec) const
    {
        BigReal r(prec);
        mpfr_set(r.rad_.get(), rad_.get(), MPFR_RNDU);
        detail::add_rounding_error(r.rad_.get(), r.mid_.get(), mpfr_set(r.mid_.get(), mid_.get(), MPFR_RNDN));
        return r;
    }

    /// Ball enlarged by `extra` in radius.
    [[nodiscard]] BigReal widened(mpfr_srcptr extra) const
    {
        BigReal r(*this);
        mpfr_add(r.rad_.get(), r.rad_.get(), extra, MPFR_RNDU);
        return r;
    }

    /// "mid +/- rad" with `digits` significant digits in the midpoint.
    [[nodiscard]] std::string to_string(int digits = 30) const
    {
        return format_mid(digits) + " +/- " + format_rad();
    }

    [[nodiscard]] std::string format_mid(int digits = 30) const
    {
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Re", std::max(digits - 1, 0), mid_.get());
        std::string out(buf);
        mpfr_free_str(buf);
        return out;
    }

    [[nodiscard]] std::string format_rad() const
    {
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.3RUe", rad_.get());
        std::string out(buf);
        mpfr_free_str(buf);
        return out;
    }

    friend BigReal operator-(const BigReal& x)
    {
        BigReal r(x);
        mpfr_neg(r.mid_.get(), r.mid_.get(), MPFR_RNDN);
        return r;
    }

    friend BigReal operator+(const BigReal& x, const BigReal& y)
    {
        BigReal r(std::max(x.precision(), y.precision()));
        mpfr_add(r.rad_.get(), x.rad_.get(), y.rad_.get(), MPFR_RNDU);
        detail::add_rounding_error(r.rad_.get(), r.mid_.get(), mpfr_add(r.mid_.get(), x.mid(), y.mid(), MPFR_RNDN));
        return r;
    }

    friend BigReal operator-(const BigReal& x, const BigReal& y)
    {
        BigReal r(std::max(x.precision(), y.precision()));
        mpfr_add(r.rad_.get(), x.rad_.get(), y.rad_.get(), MPFR_RNDU);
        detail::add_rounding_error(r.rad_.get(), r.mid_.get(), mpfr_sub(r.mid_.get(), x.mid(), y.mid(), MPFR_RNDN));
        return r;
    }

    friend BigReal operator*(const BigReal& x, const BigReal& y)
    {
        BigReal r(std::max(x.precision(), y.precision()));
        // rad = |xm| yr + |ym| xr + xr yr
        detail::Mpfr t(kRadiusPrecision);
        if (!mpfr_zero_p(y.rad())) {
            mpfr_mul(t.get(), x.mid(), y.rad(), MPFR_RNDA);
            mpfr_abs(t.get(), t.get(), MPFR_RNDU);
            mpfr_add(r.rad_.get(), r.rad_.get(), t.get(), MPFR_RNDU);
        }
        if (!mpfr_zero_p(x.rad())) {
            mpfr_mul(t.get(), y.mid(), x.rad(), MPFR_RNDA);
            mpfr_abs(t.get(), t.get(), MPFR_RNDU);
            mpfr_add(r.rad_.get(), r.rad_.get(), t.get(), MPFR_RNDU);
            if (!mpfr_zero_p(y.rad())) {
                mpfr_mul(t.get(), x.rad(), y.rad(), MPFR_RNDU);
                mpfr_add(r.rad_.get(), r.rad_.get(), t.get(), MPFR_RNDU);
            }
        }
        detail::add_rounding_error(r.rad_.get(), r.mid_.get(), mpfr_mul(r.mid_.get(), x.mid(), y.mid(), MPFR_RNDN));
        return r;
    }

    friend BigReal operator/(const BigReal& x, const BigReal& y)
    {
        // |ym| - yr must be positive.
        detail::Mpfr den(kRadiusPrecision);
        mpfr_abs(den.get(), y.mid(), MPFR_RNDD);
        mpfr_sub(den.get(), den.get(), y.rad(), MPFR_RNDD);
        if (mpfr_sgn(den.get()) <= 0) throw DomainError("division by a ball containing zero");
        BigReal r(std::max(x.precision(), y.precision()));
        const int tern = mpfr_div(r.mid_.get(), x.mid(), y.mid(), MPFR_RNDN);
        // |x/y - xm/ym| <= (xr + |xm/ym| yr) / (|ym| - yr)
        if (!mpfr_zero_p(x.rad()) || !mpfr_zero_p(y.rad())) {
            detail::Mpfr q(kRadiusPrecision);
            mpfr_div(q.get(), x.mid(), y.mid(), MPFR_RNDA);
            mpfr_abs(q.get(), q.get(), MPFR_RNDU);
            mpfr_mul(q.get(), q.get(), y.rad(), MPFR_RNDU);
            mpfr_add(q.get(), q.get(), x.rad(), MPFR_RNDU);
            mpfr_div(r.rad_.get(), q.get(), den.get(), MPFR_RNDU);
        }
        detail::add_rounding_error(r.rad_.get(), r.mid_.get(), tern);
        return r;
    }

    BigReal& operator+=(const BigReal& o) { return *this = *this + o; }
    BigReal& operator-=(const BigReal& o) { return *this = *this - o; }
    BigReal& operator*=(const BigReal& o) { return *this = *this * o; }
    BigReal& operator/=(const BigReal& o) { return *this = *this / o; }

    /// Ball scaled by 2^e (exact on the center).
    [[nodiscard]] BigReal mul_2si(long e) const
    {
        BigReal r(*this);
        mpfr_mul_2si(r.mid_.get(), r.mid_.get(), e, MPFR_RNDN);
        mpfr_mul_2si(r.rad_.get(), r.rad_.get(), e, MPFR_RNDU);
        return r;
    }

    /// Intersection with [lo, hi]; the caller asserts the exact value lies there.
    [[nodiscard]] BigReal clamp(const BigRat& lo, const BigRat& hi) const
    {
        const Precision p = precision() + 2;
        detail::Mpfr a(p), b(p);
        lower(a.get());
        upper(b.get());
        if (mpfr_cmp_q(b.get(), lo.get_mpq_t()) < 0 || mpfr_cmp_q(a.get(), hi.get_mpq_t()) > 0)
            throw DomainError("ball does not meet the clamping interval");
        if (mpfr_cmp_q(a.get(), lo.get_mpq_t()) >= 0 && mpfr_cmp_q(b.get(), hi.get_mpq_t()) <= 0) return *this;
        if (mpfr_cmp_q(a.get(), lo.get_mpq_t()) < 0) mpfr_set_q(a.get(), lo.get_mpq_t(), MPFR_RNDD);
        if (mpfr_cmp_q(b.get(), hi.get_mpq_t()) > 0) mpfr_set_q(b.get(), hi.get_mpq_t(), MPFR_RNDU);
        return from_interval(a.get(), b.get(), precision());
    }

    // Elementary functions need direct access to the center and radius.
    friend BigReal monotone_apply(const BigReal& x, int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t), bool increasing);
    friend BigReal lipschitz_apply(const BigReal& x, int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t));
    friend BigReal pi(Precision prec);
    friend BigReal abs(const BigReal& x);

private:
    detail::Mpfr mid_;
    detail::Mpfr rad_;
};

// Applies a monotone function through the interval endpoints with outward rounding.
inline BigReal monotone_apply(const BigReal& x, int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t), bool increasing)
{
    const Precision p = x.precision();
    detail::Mpfr lo(p), hi(p), flo(p), fhi(p);
    x.lower(lo.get());
    x.upper(hi.get());
    if (increasing) {
        fn(flo.get(), lo.get(), MPFR_RNDD);
        fn(fhi.get(), hi.get(), MPFR_RNDU);
    } else {
        fn(flo.get(), hi.get(), MPFR_RNDD);
        fn(fhi.get(), lo.get(), MPFR_RNDU);
    }
    return BigReal::from_interval(flo.get(), fhi.get(), p);
}

// Applies a function with Lipschitz constant <= 1 on the whole real line.
inline BigReal lipschitz_apply(const BigReal& x, int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t))
{
    BigReal r(x.precision());
    mpfr_set(r.rad_.get(), x.rad(), MPFR_RNDU);
    detail::add_rounding_error(r.rad_.get(), r.mid_.get(), fn(r.mid_.get(), x.mid(), MPFR_RNDN));
    return r;
}

inline BigReal pi(Precision prec = kDefaultPrecision)
{
    BigReal r(prec);
    detail::add_rounding_error(r.rad_.get(), r.mid_.get(), mpfr_const_pi(r.mid_.get(), MPFR_RNDN));
    return r;
}

inline BigReal abs(const BigReal& x)
{
    BigReal r(x);
    mpfr_abs(r.mid_.get(), r.mid_.get(), MPFR_RNDN);
    return r;
}

inline BigReal sqrt(const BigReal& x)
{
    if (!x.is_nonnegative()) throw DomainError("sqrt of a ball reaching below zero");
    return monotone_apply(x, mpfr_sqrt, true);
}

/// Square root of a ball whose exact value is known to be nonnegative: the
/// part of the ball below zero is discarded.
inline BigReal sqrt_nonneg(const BigReal& x)
{
    const Precision p = x.precision();
    detail::Mpfr lo(p), hi(p);
    x.lower(lo.get());
    x.upper(hi.get());
    if (mpfr_sgn(hi.get()) < 0) throw DomainError("sqrt_nonneg of a negative ball");
    if (mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo.get(), 1);
    mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_sqrt(hi.get(), hi.get(), MPFR_RNDU);
    return BigReal::from_interval(lo.get(), hi.get(), p);
}

inline BigReal exp(const BigReal& x) { return monotone_apply(x, mpfr_exp, true); }

inline BigReal log(const BigReal& x)
{
    if (!x.is_positive()) throw DomainError("log of a ball not strictly positive");
    return monotone_apply(x, mpfr_log, true);
}

inline BigReal log1p(const BigReal& x)
{
    if (!(x + BigReal::from_int(1, x.precision())).is_positive()) throw DomainError("log1p argument must exceed -1");
    return monotone_apply(x, mpfr_log1p, true);
}

inline BigReal acos(const BigReal& x)
{
    detail::Mpfr lo(x.precision() + 2), hi(x.precision() + 2);
    x.lower(lo.get());
    x.upper(hi.get());
    if (mpfr_cmp_si(lo.get(), -1) < 0 || mpfr_cmp_si(hi.get(), 1) > 0) throw DomainError("acos argument outside [-1, 1]");
    return monotone_apply(x, mpfr_acos, false);
}

inline BigReal sin(const BigReal& x) { return lipschitz_apply(x, mpfr_sin); }
inline BigReal cos(const BigReal& x) { return lipschitz_apply(x, mpfr_cos); }

inline BigReal sqr(const BigReal& x) { return x * x; }

inline BigReal pow(const BigReal& x, unsigned k)
{
    BigReal result = BigReal::from_int(1, x.precision());
    BigReal base = x;
    while (k) {
        if (k & 1U) result *= base;
        k >>= 1U;
        if (k) base = base * base;
    }
    return result;
}

/// cos(pi / n) and friends used throughout: pi * num / den as a ball.
inline BigReal pi_times(long num, long den, Precision prec)
{
    return pi(prec) * BigReal::from_int(num, prec) / BigReal::from_int(den, prec);
}

} // namespace kruehr

#endif
