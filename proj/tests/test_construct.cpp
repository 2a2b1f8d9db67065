#include "kruehr/construct.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace kruehr;

namespace {

std::vector<BigRat> rational_coeffs(const FieldPoly& w)
{
    std::vector<BigRat> out;
    for (const auto& c : w.coeffs()) {
        const auto q = c.rational_value();
        EXPECT_TRUE(q.has_value());
        out.push_back(q.value_or(BigRat(0)));
    }
    return out;
}

// sqrt(2) as a ball at p bits.
BigReal root2(Precision p) { return sqrt(BigReal::from_int(2, p)); }

} // namespace

TEST(Constants, SmallCasesInClosedForm)
{
    const Constants k3 = constants_exact(ring_new(3));
    EXPECT_TRUE((*k3.a + BigRat(1, 2)).is_zero());
    EXPECT_TRUE((*k3.b - BigRat(3, 4)).is_zero());
    EXPECT_TRUE(k3.u_real.contains(BigRat(-1, 2)));
    EXPECT_TRUE(k3.v_real.contains(BigRat(3, 2)));

    const Constants k2 = constants_real(2);
    EXPECT_TRUE(k2.a_real.contains(BigRat(-1, 2)));
    EXPECT_TRUE(k2.b_real.contains(BigRat(1, 2)));
    EXPECT_TRUE(k2.u_real.contains(BigRat(-1)));
    EXPECT_TRUE(k2.v_real.contains(BigRat(1)));
}

TEST(Constants, FourIsTheSqrtTwoCase)
{
    const Precision p = 200;
    const Constants k = constants_exact(ring_new(4), p);
    const BigReal r2 = root2(p + 64);
    EXPECT_TRUE(k.a_real.contains(-r2 / BigReal::from_int(4, p + 64)));
    EXPECT_TRUE(k.b_real.contains((BigReal::from_int(2, p + 64) + r2) / BigReal::from_int(4, p + 64)));
    EXPECT_LT(k.a_real.rad_double(), 1e-40);
    EXPECT_LT(k.b_real.rad_double(), 1e-40);
    EXPECT_TRUE(k.u_real.overlaps(BigReal::from_int(1, p + 64) - r2));
    EXPECT_TRUE(k.v_real.overlaps(BigReal::from_int(1, p + 64) + r2));
}

TEST(Constants, OrderingAndSignForAllSupportedN)
{
    for (int n = 2; n <= 200; ++n) {
        const Constants k = constants_real(n, 128);
        EXPECT_TRUE(k.a_real.is_negative()) << n;
        if (n >= 3) {
            // b = cos^2(pi/2n) lies in (1/2, 1).
            EXPECT_TRUE((k.b_real - BigReal::from_rat(BigRat(1, 2), 128)).is_positive()) << n;
            EXPECT_TRUE((BigReal::from_int(1, 128) - k.b_real).is_positive()) << n;
            EXPECT_TRUE(k.u_real.is_negative()) << n;
            EXPECT_TRUE((k.v_real - BigReal::from_int(1, 128)).is_positive()) << n;
        }
    }
    EXPECT_THROW(constants_real(1), std::invalid_argument);
}

TEST(Constants, ExactAndNumericAgree)
{
    for (int n = 2; n <= 16; ++n) {
        const Constants e = constants_exact(ring_new(n), 160);
        const Constants r = constants_real(n, 160);
        EXPECT_TRUE(e.a_real.overlaps(r.a_real));
        EXPECT_TRUE(e.b_real.overlaps(r.b_real));
        const auto [u, v] = endpoints_real(e, 300);
        EXPECT_TRUE(u.overlaps(r.u_real));
        EXPECT_TRUE(v.overlaps(r.v_real));
    }
}

TEST(BuildW, GoldenPolynomials)
{
    EXPECT_EQ(rational_coeffs(build_W_exact(ring_new(2))), (std::vector<BigRat>{0, 0, 1}));
    EXPECT_EQ(rational_coeffs(build_W_exact(ring_new(3))), (std::vector<BigRat>{0, 0, 3, -2}));
    EXPECT_EQ(rational_coeffs(build_W_exact(ring_new(4))), (std::vector<BigRat>{0, 0, 4, -4, 1}));
}

TEST(BuildW, ExactCoefficientsMatchDirectComposition)
{
    // W_n = V_n(a X + b) computed again by composing with rational ball images.
    for (int n = 2; n <= 10; ++n) {
        const auto ring = ring_new(n);
        const FieldPoly w = build_W_exact(ring);
        EXPECT_EQ(w.degree(), n);
        const Constants k = constants_exact(ring);
        kt::Gen g(static_cast<std::uint64_t>(n));
        for (int t = 0; t < 5; ++t) {
            const RingElem x = ring->constant(g.rational(5, 3));
            EXPECT_TRUE(w.eval(x).value_equals(eval_at(build_V(n), *k.a * x + *k.b)));
        }
    }
}

TEST(BuildW, PointValuesExact)
{
    // W(0) = V(b) = cos^2(pi/2) = 0 and W(1) = V(a + b) = cos^2(pi) = 1.
    for (int n = 2; n <= 12; ++n) {
        const auto ring = ring_new(n);
        const FieldPoly w = build_W_exact(ring);
        EXPECT_TRUE(w.eval(ring->constant(BigRat(0))).is_zero()) << n;
        EXPECT_TRUE((w.eval(ring->constant(BigRat(1))) - BigRat(1)).is_zero()) << n;
    }
}

TEST(BuildW, NumericCrossCheckedUpToExactnessCap)
{
    for (int n = 2; n <= kDefaultExactnessCap; n += 3) {
        const RealPoly w = build_W_real(ring_new(n), 256);
        EXPECT_EQ(w.degree(), n);
    }
}

TEST(BuildW, NumericPointValues)
{
    for (int n : {5, 17, 40, 101, 200}) {
        const Precision p = 256 + 3 * n + 32;
        const Constants k = constants_real(n, p);
        const RealPoly w = build_W_real(n, p);
        const BigRat tol = parse_rat("1e-30");
        EXPECT_TRUE((w.eval(k.u_real) - BigReal::from_int(1, p)).abs_below(tol)) << n;
        EXPECT_TRUE(w.eval(BigReal::from_int(0, p)).abs_below(tol)) << n;
        EXPECT_TRUE((w.eval(BigReal::from_int(1, p)) - BigReal::from_int(1, p)).abs_below(tol)) << n;
        EXPECT_TRUE((w.eval(k.v_real) - BigReal::from_int(n % 2 == 0 ? 1 : 0, p)).abs_below(tol)) << n;
    }
}

TEST(BuildW, StaysInUnitIntervalOnSupport)
{
    kt::Gen g(31);
    for (int n : {3, 6, 9, 14}) {
        const Precision p = 200 + 3 * n;
        const Constants k = constants_real(n, p);
        const RealPoly w = build_W_real(n, p);
        for (int t = 0; t <= 40; ++t) {
            // x = u + (v - u) t/40
            const BigReal x = k.u_real + (k.v_real - k.u_real) * BigReal::from_rat(make_rat(BigInt(t), BigInt(40)), p);
            const BigReal y = w.eval(x);
            EXPECT_TRUE((y + BigReal::from_rat(parse_rat("1e-40"), p)).is_nonnegative()) << n << " " << t;
            EXPECT_TRUE((BigReal::from_rat(BigRat(1) + parse_rat("1e-40"), p) - y).is_nonnegative()) << n << " " << t;
        }
    }
}

TEST(LevelCrossings, HitTheRequestedLevel)
{
    for (int n : {3, 4, 7, 12}) {
        const Precision p = 256 + 3 * n;
        const Constants k = constants_real(n, p);
        const RealPoly w = build_W_real(n, p);
        for (const BigRat& level : {BigRat(0), BigRat(1, 2), BigRat(1, 5)}) {
            const auto xs = level_crossings(k, level, p);
            // cos^2(n t) = level has about n solutions for t in [0, pi/2].
            EXPECT_GE(static_cast<int>(xs.size()), n / 2) << n;
            for (const auto& x : xs) {
                EXPECT_TRUE((w.eval(x) - BigReal::from_rat(level, p)).abs_below(parse_rat("1e-50")));
                EXPECT_TRUE((x - k.u_real).is_nonnegative() || (x - k.u_real).contains_zero());
            }
        }
    }
    EXPECT_THROW(level_crossings(constants_real(3), BigRat(2)), std::invalid_argument);
}

TEST(Binding, FieldPolyRejectsMixedRings)
{
    const auto r3 = ring_new(3);
    const auto r5 = ring_new(5);
    EXPECT_THROW(FieldPoly(r3, {r3->generator(), r5->generator()}), std::invalid_argument);
    EXPECT_EQ(FieldPoly(r3, {r3->generator(), r3->element(RatPoly{-1, 2})}).degree(), 0);
}
