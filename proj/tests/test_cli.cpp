#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli_app.hpp"

namespace {

struct Run
{
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "resonance");
    std::vector<const char *> argv;
    for (auto &a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = resonance::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

const std::string samples = RESONANCE_SAMPLES_DIR;

} // namespace

TEST(Cli, ResonateReportsCertificate)
{
    const auto r = run({"resonate", "--series", samples + "/series.json", "--select", "0,1,2", "--X", "100"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["status"], "ok");
    EXPECT_EQ(j["result"]["L"], 8);
    EXPECT_GT(j["result"]["bound"].get<double>(), 0.0);
    EXPECT_EQ(j["result"]["per_m"].size(), 3u);
}

TEST(Cli, InlineSeries)
{
    const auto r = run({"resonate", "--m-lambdas", "1", "--X", "100"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["result"]["bound"].get<double>(), 0.3941114787796351, 1e-12);
}

TEST(Cli, MissingRequiredFlag)
{
    const auto r = run({"resonate", "--m-lambdas", "1"});
    EXPECT_EQ(r.code, 1);
    const auto j = nlohmann::json::parse(r.err);
    EXPECT_EQ(j["status"], "error");
    EXPECT_NE(j["message"].get<std::string>().find("--X"), std::string::npos);
}

TEST(Cli, MissingSeries)
{
    const auto r = run({"resonate", "--X", "3"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("--series"), std::string::npos);
}

TEST(Cli, ConstraintViolationIsInvalidInput)
{
    const auto r = run({"resonate", "--m-lambdas", "1,5", "--X", "10", "--mode", "1", "--pivot", "0"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("selected index 1"), std::string::npos);
}

TEST(Cli, Theorem2RandomSeriesIsDeterministic)
{
    const std::vector<std::string> args{"theorem2", "--random-terms", "4", "--seed", "9", "--X", "200"};
    const auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const auto c = run({"theorem2", "--random-terms", "4", "--seed", "10", "--X", "200"});
    EXPECT_NE(a.out, c.out);
}

TEST(Cli, KroneckerFromFile)
{
    const auto r = run({"kronecker", "--input", samples + "/kronecker.json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out)["result"];
    for (const char *k : {"x0", "achieved", "L", "T", "delta"})
        EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_LT(j["achieved"].get<double>(), 0.05);
}

TEST(Cli, KroneckerDependentFrequencies)
{
    const auto r = run({"kronecker", "--lambdas", "1,2", "--alphas", "0.1,0.2", "--epsilon", "0.1"});
    EXPECT_EQ(r.code, 1);
}

TEST(Cli, DeltaScanCsv)
{
    const auto r = run({"delta-scan", "--from", "1", "--to", "5", "--step", "1", "--k", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "x,Delta,P,Delta_k");
    int rows = 0;
    while (std::getline(in, line))
        ++rows;
    EXPECT_EQ(rows, 5);
    EXPECT_NE(r.out.find("5,1.18065378881416"), std::string::npos);
}

TEST(Cli, DivisorPipelineSmall)
{
    const auto r = run({"divisor", "--N", "100", "--X", "7", "--max-M", "3", "--budget", "20000"});
    ASSERT_TRUE(r.code == 0 || r.code == 2) << r.err;
    const auto j = nlohmann::json::parse(r.out)["result"];
    EXPECT_EQ(j["lattice"]["target_omega"], 3);
    EXPECT_EQ(j["lattice"]["resonance_set_used"].size(), 3u);
    EXPECT_EQ(j["lattice"]["resonance_set_used"][0], 30);
}

TEST(Cli, CirclePipelineRequiresRepresentablePivot)
{
    const auto bad = run({"circle", "--N", "21", "--X", "5", "--max-M", "3", "--budget", "2000"});
    EXPECT_EQ(bad.code, 1);
    const auto ok = run({"circle", "--N", "25", "--X", "5", "--max-M", "3", "--budget", "20000"});
    EXPECT_TRUE(ok.code == 0 || ok.code == 2) << ok.err;
}

TEST(Cli, HelpDescribesFlags)
{
    const auto r = run({"resonate", "--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("--gamma"), std::string::npos);
    EXPECT_NE(r.out.find("T = 2^M X"), std::string::npos);
}

TEST(Cli, UnknownSubcommand)
{
    EXPECT_EQ(run({"bogus"}).code, 1);
    EXPECT_EQ(run({}).code, 1);
}
