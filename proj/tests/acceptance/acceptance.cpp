// Acceptance checks, one line per criterion:
//
//   AC<k> PASS|FAIL <summary> (<seconds> s, limit <seconds> s)
//
// Usage: acceptance [k ...]   runs only the listed criteria.
// Exit status is nonzero when any criterion fails.

#include "kruehr/cli.hpp"
#include "kruehr/construct.hpp"
#include "kruehr/quadrature.hpp"
#include "kruehr/verify.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

using namespace kruehr;

namespace {

struct Outcome {
    bool ok = true;
    std::string summary;
};

class Clock {
public:
    [[nodiscard]] double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct CliRun {
    int code;
    std::string out;
};

CliRun run(std::vector<std::string> args)
{
    args.insert(args.begin(), "kruehr");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str()};
}

BigRat tol(const char* s) { return parse_rat(s); }

// One shared verifier at the default settings for criteria 4 and 5.
Verifier& sweep_verifier()
{
    static Verifier v;
    return v;
}

// AC1: W_3 = 3X^2 - 2X^3 and the theorem at n = 3 over the full corpus.
Outcome golden_three()
{
    Outcome o;
    const auto ring = ring_new(3);
    const FieldPoly w = build_W_exact(ring);
    const std::vector<BigRat> want{0, 0, 3, -2};
    bool coeffs_ok = w.degree() == 3;
    for (std::size_t i = 0; i < want.size() && coeffs_ok; ++i) coeffs_ok = (w.coeff(i) - want[i]).is_zero();
    const CliRun r = run({"verify", "theorem", "--n", "3..3"});
    const auto j = nlohmann::json::parse(r.out);
    const int pass = j["summary"]["pass"];
    o.ok = coeffs_ok && r.code == 0 && pass == static_cast<int>(default_corpus().size());
    o.summary = std::string("W_3 = 3X^2 - 2X^3 ") + (coeffs_ok ? "certified" : "MISMATCH") + "; theorem n=3 " +
                std::to_string(pass) + "/" + std::to_string(default_corpus().size()) + " pass, exit " +
                std::to_string(r.code);
    return o;
}

// AC2: n = 4 in closed form.
Outcome golden_four()
{
    Outcome o;
    const auto ring = ring_new(4);
    const FieldPoly w = build_W_exact(ring);
    const std::vector<BigRat> want{0, 0, 4, -4, 1};
    bool coeffs_ok = w.degree() == 4;
    for (std::size_t i = 0; i < want.size() && coeffs_ok; ++i) coeffs_ok = (w.coeff(i) - want[i]).is_zero();

    const Constants k = constants_exact(ring, 200);
    const Precision hp = 400;
    const BigReal r2 = sqrt(BigReal::from_int(2, hp));
    const BigReal four = BigReal::from_int(4, hp);
    const BigReal one = BigReal::from_int(1, hp);
    const bool a_ok = k.a_real.contains(-r2 / four) && k.a_real.abs_upper_double() > 0 && k.a_real.rad_double() < 1e-40;
    const bool b_ok = k.b_real.contains((BigReal::from_int(2, hp) + r2) / four) && k.b_real.rad_double() < 1e-40;
    const bool u_ok = k.u_real.contains(one - r2);
    const bool v_ok = k.v_real.contains(one + r2);
    o.ok = coeffs_ok && a_ok && b_ok && u_ok && v_ok;
    std::ostringstream s;
    s << "W_4 = X^4 - 4X^3 + 4X^2 " << (coeffs_ok ? "certified" : "MISMATCH") << "; a_4 " << (a_ok ? "ok" : "BAD")
      << " (rad " << k.a_real.format_rad() << "), b_4 " << (b_ok ? "ok" : "BAD") << ", u=1-sqrt2 " << (u_ok ? "ok" : "BAD")
      << ", v=1+sqrt2 " << (v_ok ? "ok" : "BAD");
    o.summary = s.str();
    return o;
}

// AC3: exact moments n in [2, 12], k in [0, 10].
Outcome moment_sweep()
{
    Outcome o;
    Verifier v;
    int pass = 0, total = 0;
    for (int n = 2; n <= 12; ++n)
        for (int k = 0; k <= 10; ++k) {
            ++total;
            pass += v.moment_identity_exact(n, k).verdict == Verdict::pass;
        }
    o.ok = pass == total && total == 121;
    o.summary = "moment identity certified in Q[cos(pi/n)]: " + std::to_string(pass) + "/" + std::to_string(total);
    return o;
}

// AC4: numeric theorem, n in [3, 40], full corpus, 256 bits.
Outcome theorem_sweep()
{
    Outcome o;
    Verifier& v = sweep_verifier();
    int pass = 0, total = 0;
    std::string first_bad;
    for (int n = 3; n <= 40; ++n)
        for (const auto& f : default_corpus()) {
            ++total;
            const CheckRecord r = v.check_theorem(f, n);
            const BigRat limit = f.hint() == Smoothness::kink ? tol("1e-25") : tol("1e-40");
            const bool ok = r.verdict == Verdict::pass && r.residual && r.residual->abs_below(limit);
            pass += ok;
            if (!ok && first_bad.empty()) first_bad = " first failure n=" + std::to_string(n) + " " + f.tag() + " " + r.note;
        }
    o.ok = pass == total;
    o.summary = "theorem n=3..40 x " + std::to_string(default_corpus().size()) + " functions: " + std::to_string(pass) +
                "/" + std::to_string(total) + " within 1e-40 (smooth) / 1e-25 (abshalf)" + first_bad;
    return o;
}

// AC5: Lemmas 1-3 (consistent) and the intermediate form, smooth corpus.
Outcome lemma_sweep()
{
    Outcome o;
    Verifier& v = sweep_verifier();
    int pass = 0, total = 0;
    std::string first_bad;
    auto tally = [&](const CheckRecord& r) {
        ++total;
        const bool ok = r.verdict == Verdict::pass && r.residual && r.residual->abs_below(tol("1e-40"));
        pass += ok;
        if (!ok && first_bad.empty())
            first_bad = " first failure " + to_string(r.identity) + " n=" + std::to_string(r.n) + " " + r.function;
    };
    for (int n = 3; n <= 40; ++n)
        for (const auto& f : default_corpus()) {
            if (f.hint() != Smoothness::smooth) continue;
            tally(v.check_lemma1(f, n));
            tally(v.check_lemma2(f, n));
            tally(v.check_lemma3(f, n));
            if (n % 2 == 1) tally(v.check_theorem_intermediate(f, n));
        }
    o.ok = pass == total;
    o.summary = "lemma1/2/3 + intermediate n=3..40, smooth corpus: " + std::to_string(pass) + "/" + std::to_string(total) +
                " below 1e-40" + first_bad;
    return o;
}

// AC6: normalization diagnostic at n = 3, f = x.
Outcome normalization()
{
    Outcome o;
    Verifier v;
    const auto d = normalization_diagnostic(v);
    detail::Mpfr lower(64);
    mpfr_abs(lower.get(), d[0].residual->mid(), MPFR_RNDD);
    mpfr_sub(lower.get(), lower.get(), d[0].residual->rad(), MPFR_RNDD);
    const bool printed_fails = mpfr_cmp_d(lower.get(), 0.1) > 0;
    const bool consistent_ok = d[1].residual->abs_below(tol("1e-30"));
    // The diagnostic lives outside the counted records.
    SuiteConfig cfg;
    cfg.n_lo = cfg.n_hi = 3;
    cfg.functions = {TestFunction::monomial(1)};
    cfg.identities = {Identity::lemma1};
    const SuiteReport rep = run_suite(cfg);
    const bool not_counted = rep.all_passed() && rep.diagnostics.size() == 2;
    o.ok = printed_fails && consistent_ok && not_counted;
    o.summary = "as-printed residual " + d[0].residual->to_string(8) + " (> 0.1: " + (printed_fails ? "yes" : "NO") +
                "), consistent " + d[1].residual->to_string(3) + " (< 1e-30: " + (consistent_ok ? "yes" : "NO") +
                "), suite unaffected: " + (not_counted ? "yes" : "NO");
    return o;
}

// AC7: binomial identities n in [0, 500] plus spot values against direct sums.
Outcome binomial()
{
    Outcome o;
    int equal = 0;
    const auto rows = sweep(500);
    for (const auto& r : rows) equal += r.equal;
    // Direct-summation oracle for n <= 40, independent of the row walks.
    bool oracle_ok = true;
    for (long n = 0; n <= 40; ++n) {
        BigInt l2, r2, l3, r3, p;
        p = 1;
        for (long j = 0; j <= n; ++j, p *= 3) l2 += p * binom(3 * n - j, 2 * n);
        p = 1;
        for (long j = 0; j <= 2 * n; ++j, p *= -3) r2 += p * binom(3 * n - j, n);
        p = 1;
        for (long j = 0; j <= n; ++j, p *= 2) l3 += p * binom(3 * n + 1, n - j);
        p = 1;
        for (long j = 0; j <= 2 * n; ++j, p *= -4) r3 += p * binom(3 * n + 1, n + 1 + j);
        const auto e2 = eq2_sides(n), e3 = eq3_sides(n);
        oracle_ok = oracle_ok && e2.lhs == l2 && e2.rhs == r2 && e3.lhs == l3 && e3.rhs == r3;
    }
    const bool spots = eq2_sides(1).lhs == 6 && eq2_sides(1).rhs == 6 && eq3_sides(1).lhs == 6 &&
                       eq3_sides(1).rhs == 6 && eq2_sides(2).lhs == 39 && eq2_sides(2).rhs == 39;
    o.ok = equal == 1002 && oracle_ok && spots;
    o.summary = "eq2/eq3 n=0..500: " + std::to_string(equal) + "/1002 equal; spot values " + (spots ? "ok" : "BAD") +
                "; direct-sum oracle " + (oracle_ok ? "ok" : "BAD");
    return o;
}

// AC8: trigonometric sum n in [2, 500].
Outcome trig_sum()
{
    Outcome o;
    Verifier v;
    int pass = 0;
    for (int n = 2; n <= 500; ++n) {
        const CheckRecord r = v.check_trig_sum(n);
        pass += r.verdict == Verdict::pass && r.residual->abs_below(tol("1e-40"));
    }
    o.ok = pass == 499;
    o.summary = "trig sum n=2..500: " + std::to_string(pass) + "/499 below 1e-40";
    return o;
}

// AC9: sign and ordering of the constants; point values of W_n.
Outcome structure()
{
    Outcome o;
    int a_neg = 0, ordered = 0;
    for (int n = 2; n <= 200; ++n) {
        const Constants k = constants_real(n, 256);
        a_neg += k.a_real.is_negative();
        if (n >= 3)
            ordered += k.u_real.is_negative() && (k.v_real - BigReal::from_int(1, 256)).is_positive();
    }
    CheckSettings exact_s;
    exact_s.exact_cap = 12;
    Verifier exact_v(exact_s);
    int exact_ok = 0;
    for (int n = 2; n <= 12; ++n) {
        const CheckRecord r = exact_v.check_point_values(n);
        exact_ok += r.exact && r.verdict == Verdict::pass;
    }
    CheckSettings num_s;
    num_s.exact_cap = 1;
    num_s.tol_smooth = tol("1e-30");
    Verifier num_v(num_s);
    int numeric_ok = 0;
    for (int n = 2; n <= 200; ++n) numeric_ok += num_v.check_point_values(n).verdict == Verdict::pass;
    o.ok = a_neg == 199 && ordered == 198 && exact_ok == 11 && numeric_ok == 199;
    o.summary = "a_n < 0 " + std::to_string(a_neg) + "/199; u<0<1<v " + std::to_string(ordered) +
                "/198; point values exact " + std::to_string(exact_ok) + "/11, numeric (1e-30) " +
                std::to_string(numeric_ok) + "/199";
    return o;
}

// AC10: Gauss-Legendre degree exactness for m <= 64.
Outcome quadrature()
{
    Outcome o;
    const Precision p = 256;
    int rules_ok = 0;
    long monomials = 0;
    for (int m = 1; m <= 64; ++m) {
        const auto rule = cached_rule(m, p);
        std::vector<BigReal> powers;
        for (int i = 0; i < m; ++i) powers.push_back(BigReal::from_int(1, p));
        bool ok = true;
        for (int d = 0; d <= 2 * m - 1; ++d) {
            BigReal q(p);
            for (int i = 0; i < m; ++i) {
                q += rule->weights[i] * powers[i];
                powers[i] *= rule->nodes[i];
            }
            ok = ok && q.contains(d % 2 == 1 ? BigRat(0) : BigRat(2, d + 1));
            ++monomials;
        }
        BigReal sum(p);
        for (const auto& w : rule->weights) sum += w;
        ok = ok && sum.contains(BigRat(2));
        rules_ok += ok;
    }
    o.ok = rules_ok == 64;
    o.summary = "Gauss-Legendre m=1..64: " + std::to_string(rules_ok) + "/64 rules exact on all " +
                std::to_string(monomials) + " monomials, weight sums contain 2";
    return o;
}

bool schema_valid(const nlohmann::json& j, std::string& why)
{
    auto fail = [&](const std::string& w) {
        why = w;
        return false;
    };
    if (!j.is_object()) return fail("top level is not an object");
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer()) return fail("schema_version");
    if (!j.contains("config") || !j["config"].is_object()) return fail("config");
    if (!j.contains("records") || !j["records"].is_array()) return fail("records");
    if (!j.contains("summary")) return fail("summary");
    for (const char* k : {"pass", "fail", "trivial", "error"})
        if (!j["summary"].contains(k) || !j["summary"][k].is_number_integer()) return fail(std::string("summary.") + k);
    for (const auto& r : j["records"]) {
        if (!r["identity"].is_string() || !r["n"].is_number_integer() || !r["function"].is_string() ||
            !r["verdict"].is_string())
            return fail("record identity/n/function/verdict types");
        for (const char* k : {"residual_mid", "residual_rad", "tolerance"})
            if (!r.contains(k) || !(r[k].is_string() || r[k].is_null())) return fail(std::string("record ") + k);
        if (!r.contains("precision_bits") || !(r["precision_bits"].is_number_integer() || r["precision_bits"].is_null()))
            return fail("record precision_bits");
        const std::string v = r["verdict"];
        if (v != "pass" && v != "fail" && v != "trivial" && v != "error") return fail("verdict value " + v);
    }
    return true;
}

// AC11: `verify all` with defaults, twice.
Outcome cli_end_to_end()
{
    Outcome o;
    const CliRun first = run({"verify", "all"});
    const CliRun second = run({"verify", "all"});
    std::string why;
    bool schema = false;
    std::size_t records = 0;
    try {
        const auto j = nlohmann::json::parse(first.out);
        schema = schema_valid(j, why);
        records = j["records"].size();
    } catch (const std::exception& e) {
        why = e.what();
    }
    const bool same = first.out == second.out;
    o.ok = first.code == 0 && second.code == 0 && schema && same;
    o.summary = "verify all: exit " + std::to_string(first.code) + ", " + std::to_string(records) + " records, schema " +
                (schema ? "valid" : "INVALID (" + why + ")") + ", rerun " + (same ? "byte-identical" : "DIFFERS");
    return o;
}

struct Criterion {
    int id;
    double limit_seconds;  // 0 when the criterion has no runtime bound
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv)
{
    const std::vector<Criterion> all{
        {1, 10, golden_three},  {2, 0, golden_four},  {3, 300, moment_sweep}, {4, 1800, theorem_sweep},
        {5, 0, lemma_sweep},    {6, 0, normalization}, {7, 10, binomial},     {8, 0, trig_sum},
        {9, 0, structure},      {10, 0, quadrature},   {11, 0, cli_end_to_end},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& c : all) {
        if (!only.empty() && !only.count(c.id)) continue;
        Clock clock;
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.ok = false;
            out.summary = std::string("exception: ") + e.what();
        }
        const double t = clock.seconds();
        const bool in_time = c.limit_seconds <= 0 || t < c.limit_seconds;
        const bool ok = out.ok && in_time;
        failures += !ok;
        std::ostringstream timing;
        timing.precision(3);
        timing << t << " s";
        if (c.limit_seconds > 0) timing << ", limit " << c.limit_seconds << " s";
        std::cout << "AC" << c.id << ' ' << (ok ? "PASS" : "FAIL") << ' ' << out.summary << " (" << timing.str() << ")"
                  << (in_time ? "" : " OVER TIME LIMIT") << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
