#include <betatau/cli.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace betatau;
using json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream o, e;
    int c = cli::run(args, o, e);
    return {c, o.str(), e.str()};
}

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

} // namespace

TEST(Cli, TauJson)
{
    auto r = run({"tau", "--beta", "1.7"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    EXPECT_NEAR(j["tau"].get<double>(), 0.311236, 1e-6);
    EXPECT_EQ(j["regime"], "BasicInterval");
    EXPECT_EQ(EventuallyPeriodicSeq::parse(j["witness"].get<std::string>()), EventuallyPeriodicSeq::parse("00(10)"));
}

TEST(Cli, TauExactDelta)
{
    auto r = run({"tau", "--delta", "(1)"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["tau"].get<double>(), 0.5);
}

TEST(Cli, WordCommands)
{
    EXPECT_EQ(run({"sub", "01", "001"}).out, "001011\n");
    EXPECT_EQ(run({"sub", "01", "001", "011"}).out, "001010110011001011\n");
    EXPECT_EQ(run({"farey", "--level", "2"}).out, "0 001 01 011 1\n");
    auto l = run({"--format", "json", "lyndon", "--check", "01011"});
    auto j = json::parse(l.out);
    EXPECT_TRUE(j["lyndon"].get<bool>());
    EXPECT_TRUE(j["farey"].get<bool>());
    EXPECT_EQ(j["frequency"], "3/5");
    EXPECT_EQ(run({"factorizations", "--m", "8"}).out, "4\n");
}

TEST(Cli, IntervalAndJump)
{
    auto j = json::parse(run({"interval", "--word", "0011"}).out);
    EXPECT_NEAR(j["beta_left"].get<double>(), 1.75488, 5e-6);
    EXPECT_NEAR(j["beta_star"].get<double>(), 1.78431, 5e-6);
    EXPECT_EQ(j["factors"], json::array({"01", "01"}));
    auto k = json::parse(run({"interval", "--word", "001011", "--factors", "01,001"}).out);
    EXPECT_EQ(k["word"], "001011");
    auto jr = json::parse(run({"jump", "--word", "01"}).out);
    EXPECT_GT(jr["right_limit"].get<double>(), jr["tau_at"].get<double>());
}

TEST(Cli, Table1)
{
    auto r = run({"table1"});
    ASSERT_EQ(r.code, 0);
    auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 7u);
    EXPECT_EQ(ls[3], "01  1.78723  0.270274");
    EXPECT_EQ(ls[5], "011  1.91988  0.40305");
}

TEST(Cli, CurveCsv)
{
    auto r = run({"curve", "--from", "1.69", "--to", "1.71", "--step", "0.01"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto ls = lines(r.out);
    EXPECT_EQ(ls[0], "beta,tau,tau_lo,tau_hi,regime,witness");
    std::vector<std::string> data;
    for (auto& l : ls)
        if (l[0] != '#' && l[0] != 'b') data.push_back(l);
    ASSERT_EQ(data.size(), 3u);
    EXPECT_EQ(data[1].substr(0, 22), "1.7,0.311235605353252,");
    EXPECT_NE(data[1].find(",BasicInterval,0(01)"), std::string::npos);
    // byte-identical reruns
    EXPECT_EQ(run({"curve", "--from", "1.69", "--to", "1.71", "--step", "0.01"}).out, r.out);
}

TEST(Cli, CurveToFile)
{
    std::string path = ::testing::TempDir() + "curve.csv";
    auto r = run({"curve", "--from", "1.9", "--to", "2.0", "--step", "0.05", "--out", path});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    auto ls = lines(ss.str());
    EXPECT_EQ(ls.back().substr(0, 6), "2,0.5,");
}

TEST(Cli, Dim)
{
    auto r = run({"dim", "--beta", "1.7", "--t-rel", "0.5", "--n", "40"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    EXPECT_GE(j["dim_lower"].get<double>(), 0.1);
    EXPECT_EQ(j["count"], "12879730");
}

TEST(Cli, ErrorsNameTheFlag)
{
    auto check = [](std::vector<std::string> args, const std::string& flag) {
        auto r = run(args);
        EXPECT_EQ(r.code, 2);
        EXPECT_EQ(lines(r.err).size(), 1u) << r.err;
        EXPECT_NE(r.err.find(flag), std::string::npos) << r.err;
    };
    check({"tau", "--beta", "2.5"}, "--beta");
    check({"tau", "--beta", "abc"}, "--beta");
    check({"tau", "--delta", "(10"}, "--delta");
    check({"tau", "--delta", "(01)"}, "--delta");
    check({"lyndon", "--check", "0120"}, "--check");
    check({"interval", "--word", "0010111"}, "--word");
    check({"interval", "--word", "0011", "--factors", "01,001"}, "--factors");
    check({"thuemorse", "--word", "001011"}, "--word");
    check({"--precision", "32", "tau", "--beta", "1.5"}, "--precision");
    check({"farey", "--level", "40"}, "--level");
    check({"dim", "--beta", "1.7", "--t", "1.5", "--n", "10"}, "--t");
    check({"curve", "--from", "1.9", "--to", "1.8", "--step", "0.1"}, "--to");
    check({"factorizations", "--m", "0"}, "--m");
    EXPECT_EQ(run({"nosuch"}).code, 2);
}

TEST(Cli, StrictUnresolved)
{
    // a 256-bit copy of β_*^{01} is too close to the endpoint to decide
    auto star = lyndon_interval("01"_w).beta_star.value.to_string(80);
    EXPECT_EQ(run({"classify", "--beta", star}).code, 0);
    auto r = run({"--strict", "classify", "--beta", star});
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(json::parse(r.out)["kind"], "Unresolved");
    EXPECT_EQ(run({"--strict", "tau", "--beta", "1.7"}).code, 0);
}

TEST(Cli, PrecisionFromEnvironment)
{
    std::string cmd = std::string("BETATAU_PRECISION=32 ") + BETATAU_CLI_PATH + " tau --beta 1.5 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    ASSERT_NE(p, nullptr);
    char buf[512] = {};
    std::string out;
    while (fgets(buf, sizeof buf, p)) out += buf;
    int status = pclose(p);
    EXPECT_EQ(WEXITSTATUS(status), 2);
    EXPECT_NE(out.find("--precision"), std::string::npos);
}
