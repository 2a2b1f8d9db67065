#ifndef KRUEHR_CLI_HPP
#define KRUEHR_CLI_HPP

// Command-line front end. run_cli() is the whole program; tools/kruehr.cpp
// only forwards main() to it so the tests can drive it in-process.
//
//   kruehr tables [--n lo..hi] [--precision-bits P] [--exact-cap C]
//   kruehr poly --n N [--exact] [--precision-bits P]
//   kruehr verify {lemmas|theorem|moments|trig|binomial|all} [options]
//
// Exit codes: 0 all pass, 1 any fail or error verdict, 2 usage error.

#include "kruehr/construct.hpp"
#include "kruehr/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace kruehr {

inline constexpr int kSchemaVersion = 1;
inline constexpr int kMidDigits = 20;

enum class OutputFormat { json, csv, md };

struct CliConfig {
    std::string command;
    std::string subcommand;
    int n_lo = 3;
    int n_hi = 40;
    long n_max = 100;
    int k_max = 10;
    std::string functions = "all";
    Precision precision = kDefaultPrecision;
    std::string tol_smooth = "1e-40";
    std::string tol_kink = "1e-25";
    Normalization normalization = Normalization::consistent;
    int exact_cap = 12;
    bool exact = false;
    OutputFormat format = OutputFormat::json;
    std::string out_path;
};

/// "lo..hi" (inclusive) or a single integer.
inline std::pair<int, int> parse_range(const std::string& text)
{
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw std::invalid_argument("bad range: " + text);
        return v;
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const int v = to_int(text);
        return {v, v};
    }
    const int lo = to_int(text.substr(0, dots));
    const int hi = to_int(text.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty range: " + text);
    return {lo, hi};
}

// ---------------------------------------------------------------------------
// Rendering

namespace detail {

inline std::string format_rat_sci(const BigRat& q)
{
    Mpfr x(128);
    mpfr_set_q(x.get(), q.get_mpq_t(), MPFR_RNDN);
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.6Re", x.get());
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

inline std::string join_detail(const CheckRecord& r)
{
    std::string out;
    for (const auto& [k, v] : r.detail) {
        if (!out.empty()) out += ';';
        out += k + "=" + v;
    }
    return out;
}

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

inline std::string md_cell(std::string s)
{
    std::string out;
    for (char ch : s) {
        if (ch == '|') out += '\\';
        out += ch;
    }
    return out;
}

inline std::vector<std::string> poly_strings(const RatPoly& p)
{
    std::vector<std::string> out;
    for (const auto& c : p.coeffs()) out.push_back(c.get_str());
    return out;
}

} // namespace detail

/// Record fields in their fixed order; CSV and JSON share it.
inline const std::vector<std::string>& record_fields()
{
    static const std::vector<std::string> fields{"identity",  "n",       "function",       "residual_mid",
                                                 "residual_rad", "tolerance", "verdict", "precision_bits",
                                                 "exact",     "note",    "detail"};
    return fields;
}

inline nlohmann::ordered_json record_to_json(const CheckRecord& r)
{
    nlohmann::ordered_json j;
    j["identity"] = to_string(r.identity);
    j["n"] = r.n;
    j["function"] = r.function;
    if (r.residual) {
        j["residual_mid"] = r.residual->format_mid(kMidDigits);
        j["residual_rad"] = r.residual->format_rad();
    } else {
        j["residual_mid"] = nullptr;
        j["residual_rad"] = nullptr;
    }
    j["tolerance"] = r.tolerance ? nlohmann::ordered_json(detail::format_rat_sci(*r.tolerance)) : nlohmann::ordered_json();
    j["verdict"] = to_string(r.verdict);
    j["precision_bits"] = r.precision > 0 ? nlohmann::ordered_json(static_cast<long>(r.precision)) : nlohmann::ordered_json();
    j["exact"] = r.exact;
    j["note"] = r.note;
    j["detail"] = detail::join_detail(r);
    return j;
}

inline nlohmann::ordered_json config_to_json(const CliConfig& c, const std::vector<std::string>& identities)
{
    nlohmann::ordered_json j;
    j["command"] = c.command + (c.subcommand.empty() ? "" : " " + c.subcommand);
    j["n"] = std::to_string(c.n_lo) + ".." + std::to_string(c.n_hi);
    j["n_max"] = c.n_max;
    j["k_max"] = c.k_max;
    nlohmann::ordered_json fns = nlohmann::ordered_json::array();
    for (const auto& f : parse_function_list(c.functions)) fns.push_back(f.tag());
    j["functions"] = fns;
    j["identities"] = identities;
    j["precision_bits"] = static_cast<long>(c.precision);
    j["tol_smooth"] = c.tol_smooth;
    j["tol_kink"] = c.tol_kink;
    j["normalization"] = to_string(c.normalization);
    j["exact_cap"] = c.exact_cap;
    return j;
}

inline std::vector<std::string> identity_names(const std::set<Identity>& ids)
{
    std::vector<std::string> out;
    for (auto id : ids) out.push_back(to_string(id));
    return out;
}

inline std::string render_report(const SuiteReport& report, const CliConfig& config, OutputFormat format)
{
    const auto ids = identity_names(report.config.identities);
    std::ostringstream os;
    if (format == OutputFormat::json) {
        nlohmann::ordered_json j;
        j["schema_version"] = kSchemaVersion;
        j["config"] = config_to_json(config, ids);
        j["records"] = nlohmann::ordered_json::array();
        for (const auto& r : report.records) j["records"].push_back(record_to_json(r));
        j["diagnostics"] = nlohmann::ordered_json::array();
        for (const auto& r : report.diagnostics) j["diagnostics"].push_back(record_to_json(r));
        j["summary"] = {{"pass", report.summary.pass},
                        {"fail", report.summary.fail},
                        {"trivial", report.summary.trivial},
                        {"error", report.summary.error}};
        os << j.dump(2) << '\n';
        return os.str();
    }
    auto cell = [](const nlohmann::ordered_json& v) -> std::string {
        if (v.is_null()) return "";
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
    };
    if (format == OutputFormat::csv) {
        const auto& fields = record_fields();
        for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << fields[i];
        os << '\n';
        for (const auto& r : report.records) {
            const auto j = record_to_json(r);
            for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << detail::csv_field(cell(j[fields[i]]));
            os << '\n';
        }
        return os.str();
    }
    os << "# Verification report\n\n";
    os << "Command: `" << config.command << ' ' << config.subcommand << "`, n " << config.n_lo << ".." << config.n_hi
       << ", " << config.precision << " bits, normalization " << to_string(config.normalization) << ".\n\n";
    auto table = [&](const std::vector<CheckRecord>& recs) {
        os << "| identity | n | function | residual | tolerance | verdict | note |\n";
        os << "|---|---|---|---|---|---|---|\n";
        for (const auto& r : recs) {
            const auto j = record_to_json(r);
            const std::string residual =
                r.residual ? cell(j["residual_mid"]) + " ± " + cell(j["residual_rad"]) : (r.exact ? "exact" : "");
            os << "| " << to_string(r.identity) << " | " << r.n << " | " << r.function << " | " << residual << " | "
               << cell(j["tolerance"]) << " | " << to_string(r.verdict) << " | "
               << detail::md_cell(r.note.empty() ? detail::join_detail(r) : r.note) << " |\n";
        }
    };
    table(report.records);
    if (!report.diagnostics.empty()) {
        os << "\n## Diagnostics (not counted)\n\n";
        table(report.diagnostics);
    }
    os << "\n**Summary:** " << report.summary.pass << " pass, " << report.summary.fail << " fail, "
       << report.summary.trivial << " trivial, " << report.summary.error << " error.\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Commands

inline std::set<Identity> identities_for(const std::string& sub)
{
    using I = Identity;
    if (sub == "lemmas") return {I::lemma1, I::lemma2, I::lemma3, I::theorem_intermediate};
    if (sub == "theorem") return {I::theorem};
    if (sub == "moments") return {I::moment_exact, I::point_values};
    if (sub == "trig") return {I::trig_sum};
    if (sub == "binomial") return {I::binomial_eq2, I::binomial_eq3};
    if (sub == "all")
        return {I::lemma1, I::lemma2,       I::lemma3,       I::theorem,      I::theorem_intermediate,
                I::trig_sum, I::moment_exact, I::point_values, I::binomial_eq2, I::binomial_eq3};
    throw std::invalid_argument("unknown verify target: " + sub);
}

inline SuiteConfig suite_config(const CliConfig& c)
{
    SuiteConfig s;
    s.n_lo = c.n_lo;
    s.n_hi = c.n_hi;
    s.k_max = c.k_max;
    s.functions = parse_function_list(c.functions);
    s.identities = identities_for(c.subcommand);
    s.binomial_n_max = c.n_max;
    s.precision = c.precision;
    s.tol_smooth = parse_rat(c.tol_smooth);
    s.tol_kink = parse_rat(c.tol_kink);
    s.normalization = c.normalization;
    s.exact_cap = c.exact_cap;
    return s;
}

inline std::string render_tables(const CliConfig& c)
{
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int n = c.n_lo; n <= c.n_hi; ++n) {
        nlohmann::ordered_json row;
        row["n"] = n;
        Constants k;
        if (n <= c.exact_cap) {
            k = constants_exact(ring_new(n), c.precision);
        } else {
            k = constants_real(n, c.precision);
        }
        for (auto [name, ball] : {std::pair<const char*, const BigReal*>{"a", &k.a_real}, {"b", &k.b_real},
                                  {"u", &k.u_real}, {"v", &k.v_real}})
            row[name] = ball->to_string(kMidDigits);
        if (k.a) {
            row["a_exact"] = to_string(k.a->rep());
            row["b_exact"] = to_string(k.b->rep());
        } else {
            row["a_exact"] = nullptr;
            row["b_exact"] = nullptr;
        }
        rows.push_back(row);
    }
    std::ostringstream os;
    if (c.format == OutputFormat::json) {
        nlohmann::ordered_json j;
        j["schema_version"] = kSchemaVersion;
        j["generator"] = "cos(pi/n)";
        j["precision_bits"] = static_cast<long>(c.precision);
        j["rows"] = rows;
        os << j.dump(2) << '\n';
    } else if (c.format == OutputFormat::csv) {
        os << "n,a,b,u,v,a_exact,b_exact\n";
        for (const auto& r : rows) {
            os << r["n"].get<int>();
            for (const char* key : {"a", "b", "u", "v", "a_exact", "b_exact"})
                os << ',' << detail::csv_field(r[key].is_null() ? "" : r[key].get<std::string>());
            os << '\n';
        }
    } else {
        os << "| n | a | b | u | v | a in c | b in c |\n|---|---|---|---|---|---|---|\n";
        for (const auto& r : rows) {
            os << "| " << r["n"].get<int>();
            for (const char* key : {"a", "b", "u", "v", "a_exact", "b_exact"})
                os << " | " << (r[key].is_null() ? "" : r[key].get<std::string>());
            os << " |\n";
        }
    }
    return os.str();
}

inline std::string render_poly(const CliConfig& c)
{
    nlohmann::ordered_json polys = nlohmann::ordered_json::array();
    for (int n = c.n_lo; n <= c.n_hi; ++n) {
        nlohmann::ordered_json p;
        p["n"] = n;
        p["exact"] = c.exact;
        nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
        if (c.exact) {
            const CosRingPtr ring = ring_new(n);
            const FieldPoly w = build_W_exact(ring);
            p["modulus"] = detail::poly_strings(ring->modulus());
            p["isolating_interval"] = {to_string(ring->isolating_lo()), to_string(ring->isolating_hi())};
            for (const auto& e : w.coeffs()) {
                nlohmann::ordered_json cj;
                cj["rep"] = detail::poly_strings(e.rep());
                const auto q = e.rational_value();
                cj["value"] = q ? nlohmann::ordered_json(to_string(*q)) : nlohmann::ordered_json();
                cj["ball"] = e.eval_real(c.precision).to_string(kMidDigits);
                coeffs.push_back(cj);
            }
        } else {
            const RealPoly w = build_W_real(n, c.precision);
            for (const auto& b : w.coeffs()) {
                nlohmann::ordered_json cj;
                cj["ball"] = b.to_string(kMidDigits);
                coeffs.push_back(cj);
            }
        }
        p["coefficients"] = coeffs;
        polys.push_back(p);
    }
    std::ostringstream os;
    if (c.format == OutputFormat::json) {
        nlohmann::ordered_json j;
        j["schema_version"] = kSchemaVersion;
        j["generator"] = "cos(pi/n)";
        j["precision_bits"] = static_cast<long>(c.precision);
        j["polynomials"] = polys;
        os << j.dump(2) << '\n';
        return os.str();
    }
    auto join = [](const nlohmann::ordered_json& arr) {
        std::string s = "[";
        for (std::size_t i = 0; i < arr.size(); ++i) s += (i ? ", " : "") + arr[i].get<std::string>();
        return s + "]";
    };
    if (c.format == OutputFormat::csv) {
        os << "n,index,rep,value,ball\n";
        for (const auto& p : polys)
            for (std::size_t i = 0; i < p["coefficients"].size(); ++i) {
                const auto& cj = p["coefficients"][i];
                os << p["n"].get<int>() << ',' << i << ',' << detail::csv_field(cj.contains("rep") ? join(cj["rep"]) : "")
                   << ',' << (cj.contains("value") && !cj["value"].is_null() ? cj["value"].get<std::string>() : "") << ','
                   << detail::csv_field(cj["ball"].get<std::string>()) << '\n';
            }
        return os.str();
    }
    for (const auto& p : polys) {
        os << "## W_" << p["n"].get<int>() << "\n\n";
        if (c.exact) {
            os << "Modulus T_n + 1 (ascending): " << join(p["modulus"]) << "  \n";
            os << "Isolating interval for c: [" << p["isolating_interval"][0].get<std::string>() << ", "
               << p["isolating_interval"][1].get<std::string>() << "]\n\n";
        }
        os << "| power | in c | value | ball |\n|---|---|---|---|\n";
        for (std::size_t i = 0; i < p["coefficients"].size(); ++i) {
            const auto& cj = p["coefficients"][i];
            os << "| " << i << " | " << (cj.contains("rep") ? join(cj["rep"]) : "") << " | "
               << (cj.contains("value") && !cj["value"].is_null() ? cj["value"].get<std::string>() : "") << " | "
               << cj["ball"].get<std::string>() << " |\n";
        }
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Entry point

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CliConfig c;
    std::string n_text;
    std::string format_text = "json";
    std::string norm_text = "consistent";

    CLI::App app{"Verification toolkit for the W_n polynomial family and its integral identities", "kruehr"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", n_text, "n range lo..hi (inclusive) or a single n");
        sub->add_option("--precision-bits", c.precision, "working precision in bits")->check(CLI::Range(16, 1 << 20));
        sub->add_option("--format", format_text, "output format")->check(CLI::IsMember({"json", "csv", "md"}));
        sub->add_option("--out", c.out_path, "write output to PATH instead of standard output");
    };

    CLI::App* tables = app.add_subcommand("tables", "constants a_n, b_n, u_n, v_n per n");
    add_common(tables);
    tables->add_option("--exact-cap", c.exact_cap, "exact forms for n up to this cap")->check(CLI::NonNegativeNumber);

    CLI::App* poly = app.add_subcommand("poly", "coefficients of W_n");
    add_common(poly);
    poly->add_flag("--exact", c.exact, "exact coefficients in Q[cos(pi/n)]");

    CLI::App* verify = app.add_subcommand("verify", "run identity checks and write a report");
    add_common(verify);
    verify->add_option("target", c.subcommand, "what to verify")
        ->required()
        ->check(CLI::IsMember({"lemmas", "theorem", "moments", "trig", "binomial", "all"}));
    verify->add_option("--n-max", c.n_max, "largest n for the binomial sweep")->check(CLI::NonNegativeNumber);
    verify->add_option("--k-max", c.k_max, "largest moment power")->check(CLI::NonNegativeNumber);
    verify->add_option("--functions", c.functions, "test functions, e.g. all or monomial:0..4,sqrtx");
    verify->add_option("--tol-smooth", c.tol_smooth, "tolerance for smooth test functions");
    verify->add_option("--tol-kink", c.tol_kink, "tolerance for the kinked test function");
    verify->add_option("--normalization", norm_text, "normalization of B_n")
        ->check(CLI::IsMember({"consistent", "as-printed"}));
    verify->add_option("--exact-cap", c.exact_cap, "exact checks up to this n")->check(CLI::NonNegativeNumber);

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    // Validation, before any computation.
    try {
        c.command = tables->parsed() ? "tables" : poly->parsed() ? "poly" : "verify";
        c.format = format_text == "csv" ? OutputFormat::csv : format_text == "md" ? OutputFormat::md : OutputFormat::json;
        c.normalization = norm_text == "as-printed" ? Normalization::as_printed : Normalization::consistent;
        if (!n_text.empty()) std::tie(c.n_lo, c.n_hi) = parse_range(n_text);
        else if (c.command == "poly") throw std::invalid_argument("poly requires --n");
        if (c.n_lo < 2) throw std::invalid_argument("n must be at least 2 (a_n, b_n are defined for n > 1)");
        if (c.command == "verify") {
            if (parse_rat(c.tol_smooth) <= 0 || parse_rat(c.tol_kink) <= 0)
                throw std::invalid_argument("tolerances must be positive");
            (void)parse_function_list(c.functions);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    std::string text;
    int code = 0;
    if (c.command == "tables") {
        text = render_tables(c);
    } else if (c.command == "poly") {
        text = render_poly(c);
    } else {
        const SuiteReport report = run_suite(suite_config(c));
        text = render_report(report, c, c.format);
        code = report.all_passed() ? 0 : 1;
    }

    if (c.out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(c.out_path, std::ios::binary);
        if (!f) {
            err << "error: cannot open " << c.out_path << " for writing\n";
            return 2;
        }
        f << text;
    }
    return code;
}

} // namespace kruehr

#endif
