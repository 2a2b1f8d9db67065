#ifndef KRUEHR_EXACTNUM_HPP
#define KRUEHR_EXACTNUM_HPP

// Exact integers, rationals and dense univariate polynomials over Q,
// plus the gcd / squarefree / Sturm machinery used by the cosine ring.

#include <gmpxx.h>

#include <cstddef>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kruehr {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// Degree reported for the zero polynomial; compares below every real degree.
inline constexpr int kZeroDegree = std::numeric_limits<int>::min();

inline BigRat make_rat(const BigInt& num, const BigInt& den)
{
    if (den == 0) throw std::domain_error("rational with zero denominator");
    BigRat q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p", "p/q", or a decimal / scientific literal such as "1e-40" exactly.
inline BigRat parse_rat(const std::string& text)
{
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    if (text.find('/') != std::string::npos) {
        BigRat q;
        if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
        if (q.get_den() == 0) throw std::domain_error("rational with zero denominator");
        q.canonicalize();
        return q;
    }
    std::string mant = text;
    long exp10 = 0;
    if (auto e = text.find_first_of("eE"); e != std::string::npos) {
        mant = text.substr(0, e);
        try {
            std::size_t used = 0;
            exp10 = std::stol(text.substr(e + 1), &used);
            if (used != text.size() - e - 1) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument("bad exponent in literal: " + text);
        }
    }
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
        neg = mant[0] == '-';
        mant.erase(0, 1);
    }
    std::string digits;
    bool seen_point = false;
    for (char ch : mant) {
        if (ch == '.' && !seen_point) {
            seen_point = true;
        } else if (ch >= '0' && ch <= '9') {
            digits.push_back(ch);
            if (seen_point) --exp10;
        } else {
            throw std::invalid_argument("bad rational literal: " + text);
        }
    }
    if (digits.empty()) throw std::invalid_argument("bad rational literal: " + text);
    BigInt num(digits, 10);
    if (neg) num = -num;
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    return exp10 < 0 ? make_rat(num, scale) : BigRat(num * scale);
}

inline std::string to_string(const BigRat& q) { return q.get_str(10); }

/// Dense polynomial with exact rational coefficients; coeffs()[i] multiplies X^i.
/// The highest stored coefficient is always nonzero.
class RatPoly {
public:
    RatPoly() = default;

    explicit RatPoly(std::vector<BigRat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    RatPoly(std::initializer_list<long> ints)
    {
        coeffs_.reserve(ints.size());
        for (long v : ints) coeffs_.emplace_back(v);
        trim();
    }

    static RatPoly constant(const BigRat& c) { return RatPoly(std::vector<BigRat>{c}); }

    static RatPoly monomial(const BigRat& c, std::size_t power)
    {
        std::vector<BigRat> cs(power + 1);
        cs[power] = c;
        return RatPoly(std::move(cs));
    }

    static RatPoly x() { return monomial(BigRat(1), 1); }

    [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }

    [[nodiscard]] int degree() const
    {
        return coeffs_.empty() ? kZeroDegree : static_cast<int>(coeffs_.size()) - 1;
    }

    [[nodiscard]] std::span<const BigRat> coeffs() const { return coeffs_; }

    /// Coefficient of X^i, zero beyond the degree.
    [[nodiscard]] BigRat coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigRat(0); }

    [[nodiscard]] const BigRat& leading() const
    {
        if (coeffs_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return coeffs_.back();
    }

    [[nodiscard]] BigRat eval(const BigRat& at) const
    {
        BigRat acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
        return acc;
    }

    [[nodiscard]] RatPoly derivative() const
    {
        if (coeffs_.size() <= 1) return {};
        std::vector<BigRat> out(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
        return RatPoly(std::move(out));
    }

    /// Antiderivative F with F(0) = 0.
    [[nodiscard]] RatPoly antiderivative() const
    {
        if (coeffs_.empty()) return {};
        std::vector<BigRat> out(coeffs_.size() + 1);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i + 1] = coeffs_[i] / static_cast<unsigned long>(i + 1);
        return RatPoly(std::move(out));
    }

    [[nodiscard]] RatPoly monic() const
    {
        if (coeffs_.empty()) return {};
        return scaled(1 / leading());
    }

    [[nodiscard]] RatPoly scaled(const BigRat& s) const
    {
        if (s == 0) return {};
        std::vector<BigRat> out(coeffs_);
        for (auto& c : out) c *= s;
        return RatPoly(std::move(out));
    }

    RatPoly& operator+=(const RatPoly& o)
    {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }

    RatPoly& operator-=(const RatPoly& o)
    {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }

    friend RatPoly operator+(RatPoly p, const RatPoly& q) { return p += q; }
    friend RatPoly operator-(RatPoly p, const RatPoly& q) { return p -= q; }
    friend RatPoly operator-(const RatPoly& p) { return p.scaled(BigRat(-1)); }
    friend RatPoly operator*(const RatPoly& p, const BigRat& s) { return p.scaled(s); }
    friend RatPoly operator*(const BigRat& s, const RatPoly& p) { return p.scaled(s); }

    friend RatPoly operator*(const RatPoly& p, const RatPoly& q)
    {
        if (p.is_zero() || q.is_zero()) return {};
        std::vector<BigRat> out(p.coeffs_.size() + q.coeffs_.size() - 1);
        for (std::size_t i = 0; i < p.coeffs_.size(); ++i) {
            if (p.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < q.coeffs_.size(); ++j) out[i + j] += p.coeffs_[i] * q.coeffs_[j];
        }
        return RatPoly(std::move(out));
    }

    friend bool operator==(const RatPoly& p, const RatPoly& q) { return p.coeffs_ == q.coeffs_; }

    friend std::ostream& operator<<(std::ostream& os, const RatPoly& p)
    {
        os << '[';
        for (std::size_t i = 0; i < p.coeffs_.size(); ++i) os << (i ? ", " : "") << p.coeffs_[i].get_str();
        return os << ']';
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<BigRat> coeffs_;
};

inline std::string to_string(const RatPoly& p)
{
    std::ostringstream os;
    os << p;
    return os.str();
}

inline RatPoly pow(const RatPoly& p, unsigned k)
{
    RatPoly result = RatPoly::constant(BigRat(1));
    RatPoly base = p;
    while (k) {
        if (k & 1U) result = result * base;
        k >>= 1U;
        if (k) base = base * base;
    }
    return result;
}

/// outer(inner(X)) by Horner's scheme.
inline RatPoly compose(const RatPoly& outer, const RatPoly& inner)
{
    RatPoly acc;
    auto cs = outer.coeffs();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * inner + RatPoly::constant(*it);
    return acc;
}

/// Exact value of the integral of p over [lo, hi].
inline BigRat definite_integral(const RatPoly& p, const BigRat& lo, const BigRat& hi)
{
    const RatPoly anti = p.antiderivative();
    return anti.eval(hi) - anti.eval(lo);
}

/// Euclidean division over Q: returns (quotient, remainder) with deg remainder < deg divisor.
inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& num, const RatPoly& den)
{
    if (den.is_zero()) throw std::domain_error("polynomial division by zero");
    if (num.degree() < den.degree()) return {RatPoly{}, num};
    std::vector<BigRat> rem(num.coeffs().begin(), num.coeffs().end());
    const auto dc = den.coeffs();
    const std::size_t dd = dc.size() - 1;
    std::vector<BigRat> quot(rem.size() - dd);
    const BigRat inv_lead = 1 / dc.back();
    for (std::size_t i = rem.size(); i-- > dd;) {
        if (rem[i] == 0) continue;
        BigRat f = rem[i] * inv_lead;
        quot[i - dd] = f;
        for (std::size_t j = 0; j <= dd; ++j) rem[i - dd + j] -= f * dc[j];
    }
    rem.resize(dd);
    return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
}

namespace detail {

using IntPoly = std::vector<BigInt>;

inline void trim(IntPoly& p)
{
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Positive scalar multiple of p with coprime integer coefficients.
inline IntPoly primitive(const RatPoly& p)
{
    BigInt den(1);
    for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    IntPoly out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(c.get_num() * (den / c.get_den()));
    BigInt g(0);
    for (const auto& c : out) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1)
        for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return out;
}

inline void make_primitive(IntPoly& p)
{
    BigInt g(0);
    for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1)
        for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// Remainder of a by b scaled by a positive power of |lc(b)|, so signs match the true remainder.
inline IntPoly pseudo_remainder(IntPoly a, const IntPoly& b)
{
    const std::size_t db = b.size() - 1;
    const BigInt& lb = b.back();
    const BigInt abs_lb = abs(lb);
    const int sgn_lb = sgn(lb);
    while (!a.empty() && a.size() - 1 >= db) {
        const std::size_t shift = a.size() - 1 - db;
        const BigInt la = a.back();
        for (auto& c : a) c *= abs_lb;
        for (std::size_t j = 0; j <= db; ++j) {
            if (sgn_lb > 0)
                a[shift + j] -= la * b[j];
            else
                a[shift + j] += la * b[j];
        }
        trim(a);
        make_primitive(a);
    }
    return a;
}

inline RatPoly to_rat(const IntPoly& p)
{
    std::vector<BigRat> out;
    out.reserve(p.size());
    for (const auto& c : p) out.emplace_back(c);
    return RatPoly(std::move(out));
}

// Sign of p(num/den) for den > 0, without leaving the integers.
inline int sign_at(const IntPoly& p, const BigRat& at)
{
    if (p.empty()) return 0;
    const BigInt& num = at.get_num();
    const BigInt& den = at.get_den();
    BigInt acc(0);
    BigInt den_pow(1);
    // acc = sum c_i num^i den^(d-i), evaluated from the top down.
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = acc * num + *it * den_pow;
        den_pow *= den;
    }
    return sgn(acc);
}

} // namespace detail

/// Monic gcd over Q. Both-zero input has no gcd and is rejected.
inline RatPoly gcd(const RatPoly& p, const RatPoly& q)
{
    if (p.is_zero() && q.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
    if (p.is_zero()) return q.monic();
    if (q.is_zero()) return p.monic();
    auto a = detail::primitive(p);
    auto b = detail::primitive(q);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        auto r = detail::pseudo_remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return detail::to_rat(a).monic();
}

/// p / gcd(p, p'), monic.
inline RatPoly squarefree_part(const RatPoly& p)
{
    if (p.is_zero()) throw std::invalid_argument("squarefree part of the zero polynomial");
    if (p.degree() == 0) return RatPoly::constant(BigRat(1));
    const RatPoly g = gcd(p, p.derivative());
    return divmod(p, g).first.monic();
}

/// Sturm chain of a squarefree polynomial, each member a positive multiple of the classical one.
class SturmSequence {
public:
    explicit SturmSequence(const RatPoly& p)
    {
        if (p.is_zero()) throw std::invalid_argument("Sturm sequence of the zero polynomial");
        if (p.degree() > 0 && gcd(p, p.derivative()).degree() > 0)
            throw std::invalid_argument("Sturm sequence requires a squarefree polynomial");
        chain_.push_back(detail::primitive(p));
        if (p.degree() == 0) return;
        chain_.push_back(detail::primitive(p.derivative()));
        while (true) {
            auto r = detail::pseudo_remainder(chain_[chain_.size() - 2], chain_.back());
            if (r.empty()) break;
            for (auto& c : r) c = -c;
            chain_.push_back(std::move(r));
        }
    }

    [[nodiscard]] int sign_changes(const BigRat& at) const
    {
        int changes = 0;
        int last = 0;
        for (const auto& q : chain_) {
            const int s = detail::sign_at(q, at);
            if (s == 0) continue;
            if (last != 0 && s != last) ++changes;
            last = s;
        }
        return changes;
    }

    [[nodiscard]] int sign_of_base(const BigRat& at) const { return detail::sign_at(chain_.front(), at); }

    /// Number of distinct real roots in the open interval (lo, hi).
    [[nodiscard]] int count(const BigRat& lo, const BigRat& hi) const
    {
        if (!(lo < hi)) throw std::invalid_argument("Sturm count needs lo < hi");
        if (sign_of_base(lo) == 0 || sign_of_base(hi) == 0)
            throw std::invalid_argument("Sturm count interval endpoint is a root");
        return sign_changes(lo) - sign_changes(hi);
    }

private:
    std::vector<detail::IntPoly> chain_;
};

/// Exact number of real roots of a squarefree p in (lo, hi).
inline int sturm_count(const RatPoly& p, const BigRat& lo, const BigRat& hi)
{
    return SturmSequence(p).count(lo, hi);
}

} // namespace kruehr

#endif
