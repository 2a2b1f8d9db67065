#include "kruehr/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace kruehr;
using nlohmann::json;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "kruehr");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

void expect_schema(const json& j)
{
    ASSERT_TRUE(j.contains("schema_version"));
    ASSERT_TRUE(j.contains("config"));
    ASSERT_TRUE(j.contains("records"));
    ASSERT_TRUE(j.contains("summary"));
    for (const char* k : {"pass", "fail", "trivial", "error"}) ASSERT_TRUE(j["summary"][k].is_number_integer());
    for (const auto& r : j["records"])
        for (const auto& field : record_fields()) ASSERT_TRUE(r.contains(field)) << field;
}

} // namespace

TEST(Cli, TheoremFiveMoments)
{
    const CliResult r = cli({"verify", "theorem", "--n", "3..3", "--functions", "monomial:0..4"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    expect_schema(j);
    EXPECT_EQ(j["records"].size(), 5u);
    EXPECT_EQ(j["summary"]["pass"], 5);
    for (const auto& rec : j["records"]) {
        EXPECT_EQ(rec["verdict"], "pass");
        EXPECT_EQ(rec["identity"], "theorem");
        EXPECT_EQ(rec["precision_bits"], 256);
        EXPECT_TRUE(rec["residual_rad"].is_string());
    }
}

TEST(Cli, BinomialSweep)
{
    const CliResult r = cli({"verify", "binomial", "--n-max", "100"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["records"].size(), 202u);
    EXPECT_EQ(j["summary"]["pass"], 202);
    EXPECT_TRUE(j["records"][0]["residual_mid"].is_null());
}

TEST(Cli, UsageErrorsExitTwo)
{
    EXPECT_EQ(cli({"verify", "theorem", "--n", "0..1"}).code, 2);
    EXPECT_EQ(cli({"verify", "theorem", "--n", "5..3"}).code, 2);
    EXPECT_EQ(cli({"verify", "theorem", "--n", "x"}).code, 2);
    EXPECT_EQ(cli({"verify", "nonsense"}).code, 2);
    EXPECT_EQ(cli({"verify", "theorem", "--format", "xml"}).code, 2);
    EXPECT_EQ(cli({"verify", "theorem", "--functions", "cosh"}).code, 2);
    EXPECT_EQ(cli({"verify", "theorem", "--tol-smooth", "-1"}).code, 2);
    EXPECT_EQ(cli({"verify", "theorem", "--precision-bits", "4"}).code, 2);
    EXPECT_EQ(cli({"poly"}).code, 2);
    EXPECT_EQ(cli({"poly", "--n", "1", "--exact"}).code, 2);
    EXPECT_EQ(cli({}).code, 2);
    const CliResult r = cli({"verify", "theorem", "--n", "0..1"});
    EXPECT_FALSE(r.err.empty());
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, FailingVerdictExitsOne)
{
    // At 40 bits the 1e-40 tolerance is out of reach: the ball straddles it.
    const CliResult r = cli({"verify", "theorem", "--n", "3..3", "--functions", "monomial:1", "--precision-bits", "40"});
    EXPECT_EQ(r.code, 1);
    const json j = json::parse(r.out);
    EXPECT_EQ(j["summary"]["fail"].get<int>() + j["summary"]["error"].get<int>(), 1);
}

TEST(Cli, PolyExact)
{
    const std::vector<std::pair<int, std::vector<std::string>>> golden{
        {2, {"0", "0", "1"}}, {3, {"0", "0", "3", "-2"}}, {4, {"0", "0", "4", "-4", "1"}}};
    for (const auto& [n, want] : golden) {
        const CliResult r = cli({"poly", "--n", std::to_string(n), "--exact"});
        ASSERT_EQ(r.code, 0) << r.err;
        const json j = json::parse(r.out);
        const auto& coeffs = j["polynomials"][0]["coefficients"];
        ASSERT_EQ(coeffs.size(), want.size());
        for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(coeffs[i]["value"], want[i]) << n << " " << i;
        EXPECT_EQ(j["polynomials"][0]["isolating_interval"].size(), 2u);
    }
    const CliResult numeric = cli({"poly", "--n", "5", "--format", "md"});
    EXPECT_EQ(numeric.code, 0);
    EXPECT_NE(numeric.out.find("## W_5"), std::string::npos);
}

TEST(Cli, Tables)
{
    const CliResult r = cli({"tables", "--n", "2..4"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    ASSERT_EQ(j["rows"].size(), 3u);
    EXPECT_EQ(j["rows"][1]["a"].get<std::string>().rfind("-5.0000000000000000000e-01", 0), 0u);
    EXPECT_EQ(j["rows"][1]["v"].get<std::string>().rfind("1.5000000000000000000e+00", 0), 0u);
    EXPECT_EQ(j["rows"][2]["u"].get<std::string>().rfind("-4.1421356237309504880e-01", 0), 0u);
    EXPECT_EQ(j["rows"][0]["u"].get<std::string>().rfind("-1.0000000000000000000e+00", 0), 0u);
    const CliResult csv = cli({"tables", "--n", "3", "--format", "csv"});
    EXPECT_EQ(csv.out.rfind("n,a,b,u,v,a_exact,b_exact\n", 0), 0u);
}

TEST(Cli, CsvAndMarkdownCarryTheSameRecords)
{
    const std::vector<std::string> base{"verify", "lemmas", "--n", "3..4", "--functions", "monomial:0,sqrtx"};
    auto with = [&](const char* fmt) {
        auto a = base;
        a.insert(a.end(), {"--format", fmt});
        return cli(a);
    };
    const CliResult j = with("json"), c = with("csv"), m = with("md");
    ASSERT_EQ(j.code, 0) << j.err;
    const json doc = json::parse(j.out);
    std::size_t lines = 0;
    for (char ch : c.out) lines += ch == '\n';
    EXPECT_EQ(lines, doc["records"].size() + 1);
    EXPECT_EQ(c.out.rfind("identity,n,function,residual_mid,residual_rad,tolerance,verdict,precision_bits", 0), 0u);
    for (const auto& rec : doc["records"]) {
        if (rec["residual_mid"].is_string()) {
            EXPECT_NE(c.out.find(rec["residual_mid"].get<std::string>()), std::string::npos);
            EXPECT_NE(m.out.find(rec["residual_mid"].get<std::string>()), std::string::npos);
        }
    }
    EXPECT_NE(m.out.find("**Summary:**"), std::string::npos);
}

TEST(Cli, DeterministicOutputAndOutFile)
{
    const std::vector<std::string> args{"verify", "all", "--n", "3..5", "--functions", "monomial:1,abshalf",
                                        "--n-max", "20", "--k-max", "3"};
    const CliResult a = cli(args), b = cli(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const json j = json::parse(a.out);
    expect_schema(j);
    EXPECT_EQ(j["diagnostics"].size(), 2u);
    EXPECT_EQ(j["diagnostics"][0]["verdict"], "fail");

    const auto path = std::filesystem::temp_directory_path() / "kruehr_cli_test.json";
    auto with_out = args;
    with_out.insert(with_out.end(), {"--out", path.string()});
    const CliResult c = cli(with_out);
    EXPECT_EQ(c.code, 0);
    EXPECT_TRUE(c.out.empty());
    std::ifstream f(path, std::ios::binary);
    const std::string written((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    EXPECT_EQ(written, a.out);
    std::filesystem::remove(path);
}

TEST(Cli, AsPrintedNormalizationFailsLemma1)
{
    const CliResult r = cli({"verify", "lemmas", "--n", "3..3", "--functions", "monomial:1", "--normalization", "as-printed"});
    EXPECT_EQ(r.code, 1);
    const json j = json::parse(r.out);
    for (const auto& rec : j["records"])
        if (rec["identity"] == "lemma1") {
            EXPECT_EQ(rec["verdict"], "fail");
        }
    EXPECT_EQ(j["config"]["normalization"], "as-printed");
}

TEST(Cli, RangeParser)
{
    EXPECT_EQ(parse_range("3..40"), std::make_pair(3, 40));
    EXPECT_EQ(parse_range("7"), std::make_pair(7, 7));
    EXPECT_THROW(parse_range("4..2"), std::invalid_argument);
    EXPECT_THROW(parse_range("a..2"), std::invalid_argument);
    EXPECT_THROW(parse_range("3.."), std::invalid_argument);
}
