#ifndef KRUEHR_QUADRATURE_HPP
#define KRUEHR_QUADRATURE_HPP

// Gauss-Legendre rules in ball arithmetic and composite adaptive integration.

#include "kruehr/realnum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kruehr {

/// m-point Gauss-Legendre rule on [-1, 1]. Nodes are increasing; each node ball
/// is certified to contain a root of the Legendre polynomial P_m.
struct QuadRule {
    int order = 0;
    Precision precision = kDefaultPrecision;
    std::vector<BigReal> nodes;
    std::vector<BigReal> weights;
};

namespace detail {

// (P_m(x), P_{m-1}(x)) by the three-term recurrence.
inline std::pair<BigReal, BigReal> legendre_pair(int m, const BigReal& x)
{
    const Precision p = x.precision();
    BigReal prev = BigReal::from_int(1, p);
    if (m == 0) return {prev, BigReal::from_int(0, p)};
    BigReal cur = x;
    for (int k = 1; k < m; ++k) {
        // (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
        BigReal next = (BigReal::from_int(2 * k + 1, p) * x * cur - BigReal::from_int(k, p) * prev) /
                       BigReal::from_int(k + 1, p);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return {cur, prev};
}

// Legendre recurrence on plain MPFR values for the Newton phase.
inline void legendre_newton_step(int m, mpfr_ptr x, Precision p)
{
    Mpfr prev(p), cur(p), next(p), t(p), deriv(p);
    mpfr_set_ui(prev.get(), 1, MPFR_RNDN);
    mpfr_set(cur.get(), x, MPFR_RNDN);
    for (int k = 1; k < m; ++k) {
        mpfr_mul(t.get(), x, cur.get(), MPFR_RNDN);
        mpfr_mul_ui(t.get(), t.get(), 2 * k + 1, MPFR_RNDN);
        mpfr_mul_ui(next.get(), prev.get(), k, MPFR_RNDN);
        mpfr_sub(next.get(), t.get(), next.get(), MPFR_RNDN);
        mpfr_div_ui(next.get(), next.get(), k + 1, MPFR_RNDN);
        mpfr_swap(prev.get(), cur.get());
        mpfr_swap(cur.get(), next.get());
    }
    // P'_m = m (x P_m - P_{m-1}) / (x^2 - 1)
    mpfr_mul(t.get(), x, cur.get(), MPFR_RNDN);
    mpfr_sub(t.get(), t.get(), prev.get(), MPFR_RNDN);
    mpfr_mul_ui(t.get(), t.get(), m, MPFR_RNDN);
    mpfr_sqr(deriv.get(), x, MPFR_RNDN);
    mpfr_sub_ui(deriv.get(), deriv.get(), 1, MPFR_RNDN);
    mpfr_div(deriv.get(), t.get(), deriv.get(), MPFR_RNDN);
    mpfr_div(t.get(), cur.get(), deriv.get(), MPFR_RNDN);
    mpfr_sub(x, x, t.get(), MPFR_RNDN);
}

inline int certified_sign(const BigReal& v)
{
    if (v.is_positive()) return 1;
    if (v.is_negative()) return -1;
    return 0;
}

} // namespace detail

/// Builds the m-point rule. Each node is refined by Newton iteration from the
/// classical cosine guess, then enclosed in a ball whose endpoints give P_m
/// certified opposite signs. Throws PrecisionError when that certification fails.
inline QuadRule gauss_legendre(int m, Precision prec = kDefaultPrecision)
{
    if (m < 1 || m > 256) throw std::invalid_argument("Gauss-Legendre order must lie in [1, 256]");
    if (prec < 16) throw std::invalid_argument("precision must be at least 16 bits");
    QuadRule rule;
    rule.order = m;
    rule.precision = prec;
    rule.nodes.reserve(m);
    rule.weights.reserve(m);
    // Ball radii in the three-term recurrence grow like (1 + sqrt 2)^m near +-1.
    const Precision work = prec + 48 + 2 * static_cast<Precision>(m);
    const long exp_delta = -static_cast<long>(prec) - 4;
    for (int i = m; i >= 1; --i) {
        // i-th largest root; emitted in increasing order.
        detail::Mpfr x(work);
        mpfr_set_d(x.get(), std::cos(M_PI * (i - 0.25) / (m + 0.5)), MPFR_RNDN);
        if (m == 1) mpfr_set_zero(x.get(), 1);
        for (int it = 0; it < 200; ++it) {
            detail::Mpfr before(work);
            mpfr_set(before.get(), x.get(), MPFR_RNDN);
            detail::legendre_newton_step(m, x.get(), work);
            detail::Mpfr diff(work);
            mpfr_sub(diff.get(), x.get(), before.get(), MPFR_RNDN);
            if (mpfr_zero_p(diff.get()) || mpfr_get_exp(diff.get()) < -static_cast<long>(work) + 4) break;
        }
        detail::Mpfr delta(kRadiusPrecision);
        mpfr_set_ui_2exp(delta.get(), 1, exp_delta, MPFR_RNDU);
        detail::Mpfr lo(work), hi(work);
        mpfr_sub(lo.get(), x.get(), delta.get(), MPFR_RNDD);
        mpfr_add(hi.get(), x.get(), delta.get(), MPFR_RNDU);
        const BigReal lo_ball = BigReal::from_mpfr(lo.get(), work);
        const BigReal hi_ball = BigReal::from_mpfr(hi.get(), work);
        const int s_lo = detail::certified_sign(detail::legendre_pair(m, lo_ball).first);
        const int s_hi = detail::certified_sign(detail::legendre_pair(m, hi_ball).first);
        if (s_lo == 0 || s_hi == 0 || s_lo == s_hi)
            throw PrecisionError("cannot certify Gauss-Legendre node " + std::to_string(m - i + 1) + " of " +
                                 std::to_string(m) + " at " + std::to_string(prec) + " bits");
        BigReal node = BigReal::from_interval(lo.get(), hi.get(), prec);
        // w = 2 / ((1 - x^2) P'_m(x)^2), with P'_m = m (P_{m-1} - x P_m) / (1 - x^2)
        const BigReal node_hp = node.with_precision(prec + 16);
        auto [pm, pm1] = detail::legendre_pair(m, node_hp);
        const BigReal one = BigReal::from_int(1, prec + 16);
        const BigReal one_minus_x2 = one - sqr(node_hp);
        const BigReal dp = BigReal::from_int(m, prec + 16) * (pm1 - node_hp * pm) / one_minus_x2;
        BigReal w = BigReal::from_int(2, prec + 16) / (one_minus_x2 * sqr(dp));
        if (!rule.nodes.empty()) {
            detail::Mpfr prev_hi(prec + 2), cur_lo(prec + 2);
            rule.nodes.back().upper(prev_hi.get());
            node.lower(cur_lo.get());
            if (mpfr_cmp(prev_hi.get(), cur_lo.get()) >= 0)
                throw PrecisionError("Gauss-Legendre nodes not separated at " + std::to_string(prec) + " bits");
        }
        rule.nodes.push_back(std::move(node));
        rule.weights.push_back(w.with_precision(prec));
    }
    return rule;
}

/// Process-wide cache of rules keyed by (order, precision).
inline std::shared_ptr<const QuadRule> cached_rule(int m, Precision prec)
{
    static std::mutex mutex;
    static std::map<std::pair<int, Precision>, std::shared_ptr<const QuadRule>> cache;
    const std::lock_guard lock(mutex);
    auto& slot = cache[{m, prec}];
    if (!slot) slot = std::make_shared<const QuadRule>(gauss_legendre(m, prec));
    return slot;
}

enum class Smoothness { smooth, kink };

/// A real integrand evaluated on balls. Evaluation must be inclusion-monotone.
///
/// `breakpoints` lists points where the integrand may fail to be analytic;
/// integration splits there. When `graded` is set every segment between
/// breakpoints is integrated under x = p + (q-p)(3s^2 - 2s^3), which turns
/// square-root behaviour at segment ends into analytic behaviour in s.
struct Integrand {
    std::function<BigReal(const BigReal&)> eval;
    Smoothness hint = Smoothness::smooth;
    std::vector<BigReal> breakpoints;
    bool graded = false;
};

struct IntegrateOptions {
    int order = 20;      // panel rule order m; the estimate compares m with 2m
    int max_depth = 60;  // bisection depth cap per segment
    int initial_panels_smooth = 2;
    int initial_panels_kink = 8;
};

/// Integration gave up; `best` is the enclosure reached so far (its radius
/// includes the unresolved error estimates).
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, BigReal best) : std::runtime_error(what), best(std::move(best)) {}
    BigReal best;
};

namespace detail {

class PanelIntegrator {
public:
    PanelIntegrator(std::function<BigReal(const BigReal&)> g, Precision prec, const IntegrateOptions& opts)
        : g_(std::move(g)),
          prec_(prec),
          opts_(opts),
          coarse_(cached_rule(opts.order, prec)),
          fine_(cached_rule(2 * opts.order, prec)),
          sum_(prec),
          extra_rad_(kRadiusPrecision)
    {
    }

    // Integrates g over [lo, hi] (exact dyadic endpoints); `budget` is the allowed
    // estimated error for the whole interval.
    void run(mpfr_srcptr lo, mpfr_srcptr hi, int initial_panels, double budget)
    {
        Mpfr width(prec_), a(prec_), b(prec_);
        mpfr_sub(width.get(), hi, lo, MPFR_RNDN);
        for (int i = 0; i < initial_panels; ++i) {
            mpfr_mul_si(a.get(), width.get(), i, MPFR_RNDN);
            mpfr_div_si(a.get(), a.get(), initial_panels, MPFR_RNDN);
            mpfr_add(a.get(), a.get(), lo, MPFR_RNDN);
            if (i == 0) mpfr_set(a.get(), lo, MPFR_RNDN);
            if (i + 1 == initial_panels) {
                mpfr_set(b.get(), hi, MPFR_RNDN);
            } else {
                mpfr_mul_si(b.get(), width.get(), i + 1, MPFR_RNDN);
                mpfr_div_si(b.get(), b.get(), initial_panels, MPFR_RNDN);
                mpfr_add(b.get(), b.get(), lo, MPFR_RNDN);
            }
            panel(a.get(), b.get(), 0, budget / initial_panels);
        }
    }

    [[nodiscard]] BigReal result() const { return sum_.widened(extra_rad_.get()); }
    [[nodiscard]] bool failed() const { return failed_; }
    [[nodiscard]] long evaluations() const { return evaluations_; }

private:
    BigReal apply(const QuadRule& rule, const BigReal& mid, const BigReal& half)
    {
        BigReal acc(prec_);
        for (int i = 0; i < rule.order; ++i) {
            acc += rule.weights[i] * g_(mid + half * rule.nodes[i]);
            ++evaluations_;
        }
        return acc * half;
    }

    void panel(mpfr_srcptr lo, mpfr_srcptr hi, int depth, double budget)
    {
        // Balls containing the exact midpoint and half-width of [lo, hi].
        const BigReal blo = BigReal::from_mpfr(lo, mpfr_get_prec(lo));
        const BigReal bhi = BigReal::from_mpfr(hi, mpfr_get_prec(hi));
        const BigReal mid = (blo + bhi).mul_2si(-1).with_precision(prec_);
        const BigReal half = (bhi - blo).mul_2si(-1).with_precision(prec_);
        const BigReal coarse = apply(*coarse_, mid, half);
        const BigReal fine = apply(*fine_, mid, half);
        const BigReal diff = fine - coarse;
        const double est = diff.abs_upper_double();
        // Radii from rounding and uncertain evaluations shrink with the panel
        // width, as the budget does: once they alone exceed the budget,
        // bisection cannot help and the precision is the limit.
        const bool rounding_limited = diff.rad_double() + fine.rad_double() > budget;
        if (est <= budget || depth >= opts_.max_depth || rounding_limited) {
            if (est > budget) failed_ = true;
            sum_ += fine;
            Mpfr e(kRadiusPrecision);
            mpfr_set(e.get(), diff.abs_upper().get(), MPFR_RNDU);
            mpfr_add(extra_rad_.get(), extra_rad_.get(), e.get(), MPFR_RNDU);
            return;
        }
        // Children share the split point, so the partition stays exact.
        Mpfr m(prec_ + 2);
        mpfr_add(m.get(), lo, hi, MPFR_RNDN);
        mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
        panel(lo, m.get(), depth + 1, budget / 2);
        panel(m.get(), hi, depth + 1, budget / 2);
    }

    std::function<BigReal(const BigReal&)> g_;
    Precision prec_;
    IntegrateOptions opts_;
    std::shared_ptr<const QuadRule> coarse_;
    std::shared_ptr<const QuadRule> fine_;
    BigReal sum_;
    Mpfr extra_rad_;
    bool failed_ = false;
    long evaluations_ = 0;
};

} // namespace detail

/// Integral of f over [lo, hi] as a ball of width at most `tol`.
///
/// Composite Gauss-Legendre with bisection: each panel is evaluated with the
/// m- and 2m-point rules, the 2m value is kept and |Q_2m - Q_m| is folded into
/// the radius. Uncertain endpoints contribute sup|f| times their radius.
/// Throws IntegrationError (carrying the best enclosure) when the depth cap
/// is hit or the precision cannot reach `tol`.
inline BigReal integrate(const Integrand& f, const BigReal& lo, const BigReal& hi, const BigRat& tol,
                         Precision prec = kDefaultPrecision, const IntegrateOptions& opts = {})
{
    if (!(tol > 0)) throw std::invalid_argument("integration tolerance must be positive");
    if (mpfr_cmp(lo.mid(), hi.mid()) > 0) throw std::invalid_argument("integration requires lo <= hi");

    // Segment endpoints: lo, interior breakpoints, hi (centers only).
    std::vector<detail::Mpfr> cuts;
    auto push = [&](mpfr_srcptr v) {
        detail::Mpfr c(std::max(prec, mpfr_get_prec(v)));
        mpfr_set(c.get(), v, MPFR_RNDN);
        cuts.push_back(std::move(c));
    };
    push(lo.mid());
    {
        std::vector<const BigReal*> inner;
        for (const auto& bp : f.breakpoints)
            if (mpfr_cmp(bp.mid(), lo.mid()) > 0 && mpfr_cmp(bp.mid(), hi.mid()) < 0) inner.push_back(&bp);
        std::sort(inner.begin(), inner.end(),
                  [](const BigReal* x, const BigReal* y) { return mpfr_cmp(x->mid(), y->mid()) < 0; });
        for (const BigReal* bp : inner) push(bp->mid());
    }
    push(hi.mid());

    const double total_width = mpfr_get_d(hi.mid(), MPFR_RNDN) - mpfr_get_d(lo.mid(), MPFR_RNDN);
    const double tol_d = mpfr_get_d(BigReal::from_rat(tol, 64).mid(), MPFR_RNDD);
    const int initial = f.hint == Smoothness::kink ? opts.initial_panels_kink : opts.initial_panels_smooth;

    BigReal total(prec);
    bool failed = false;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        mpfr_srcptr p = cuts[s].get();
        mpfr_srcptr q = cuts[s + 1].get();
        if (mpfr_equal_p(p, q)) continue;
        const double seg_width = mpfr_get_d(q, MPFR_RNDN) - mpfr_get_d(p, MPFR_RNDN);
        const double budget = total_width > 0 ? tol_d / 4 * (seg_width / total_width) : tol_d / 4;
        std::function<BigReal(const BigReal&)> g;
        const BigReal seg_lo = BigReal::from_mpfr(p, mpfr_get_prec(p));
        const BigReal seg_w = (BigReal::from_mpfr(q, mpfr_get_prec(q)) - seg_lo).with_precision(prec);
        detail::Mpfr s_lo(prec), s_hi(prec);
        if (f.graded) {
            // x(s) = p + w (3s^2 - 2s^3), x'(s) = 6 w s (1 - s), s in [0, 1]
            g = [&f, seg_lo, seg_w, prec](const BigReal& s) {
                const BigReal one = BigReal::from_int(1, prec);
                const BigReal s2 = sqr(s);
                const BigReal psi = s2 * (BigReal::from_int(3, prec) - s.mul_2si(1));
                const BigReal dpsi = BigReal::from_int(6, prec) * s * (one - s);
                return f.eval(seg_lo + seg_w * psi) * seg_w * dpsi;
            };
            mpfr_set_ui(s_lo.get(), 0, MPFR_RNDN);
            mpfr_set_ui(s_hi.get(), 1, MPFR_RNDN);
        } else {
            g = f.eval;
            mpfr_set(s_lo.get(), p, MPFR_RNDN);
            mpfr_set(s_hi.get(), q, MPFR_RNDN);
        }
        detail::PanelIntegrator integrator(g, prec, opts);
        integrator.run(s_lo.get(), s_hi.get(), initial, budget);
        total += integrator.result();
        failed = failed || integrator.failed();
    }

    // Endpoint uncertainty: |f| on each endpoint ball times that ball's radius.
    for (const BigReal* end : {&lo, &hi}) {
        if (end->is_exact()) continue;
        const BigReal fv = f.eval(*end);
        detail::Mpfr extra(kRadiusPrecision);
        mpfr_mul(extra.get(), fv.abs_upper().get(), end->rad(), MPFR_RNDU);
        total = total.widened(extra.get());
    }

    if (failed) throw IntegrationError("subdivision depth cap reached", total);
    detail::Mpfr width(kRadiusPrecision);
    mpfr_mul_2ui(width.get(), total.rad(), 1, MPFR_RNDU);
    if (mpfr_cmp_q(width.get(), tol.get_mpq_t()) > 0)
        throw IntegrationError("precision exhausted: enclosure wider than tolerance", total);
    return total;
}

} // namespace kruehr

#endif
