#include <gtest/gtest.h>

#include "farey_approx/cli.hpp"
#include "farey_approx/selftest.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace farey_approx;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return std::string(FAREY_APPROX_FIXTURES) + "/" + name; }

}  // namespace

TEST(Cli, FareyListsSequence) {
    const Result r = run_cli({"farey", "--order", "5"});
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_EQ(r.out, "0/1\n1/5\n1/4\n1/3\n2/5\n1/2\n3/5\n2/3\n3/4\n4/5\n1/1\n");
    const Result part = run_cli({"farey", "--order", "5", "--from", "1/3", "--to", "1/2"});
    EXPECT_EQ(part.out, "1/3\n2/5\n1/2\n");
}

TEST(Cli, Neighbors) {
    const Result r = run_cli({"neighbors", "--x", "5/16", "--order", "7"});
    EXPECT_EQ(r.code, cli::kExitOk);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["kind"], "pair");
    EXPECT_EQ(j["left"], "2/7");
    EXPECT_EQ(j["right"], "1/3");
    EXPECT_EQ(run_cli({"neighbors", "--x", "3/2", "--order", "7"}).code, cli::kExitError);
}

TEST(Cli, SubdivideEmitsPointsAndTrailer) {
    const Result r = run_cli({"subdivide", "--lo", "1/3", "--hi", "1/2", "--order", "3", "--gap", "1/10"});
    EXPECT_EQ(r.code, cli::kExitOk);
    std::istringstream lines(r.out);
    std::string a, b, c, trailer;
    std::getline(lines, a);
    std::getline(lines, b);
    std::getline(lines, c);
    std::getline(lines, trailer);
    EXPECT_EQ(a, "1/3");
    EXPECT_EQ(b, "2/5");
    EXPECT_EQ(c, "1/2");
    const Json j = Json::parse(trailer);
    EXPECT_EQ(j["points"], 3);
    EXPECT_EQ(j["max_gap"], "1/10");
    EXPECT_EQ(j["min_gap"], "1/15");

    const Result inf =
        run_cli({"subdivide", "--lo", "0", "--hi", "1/7", "--order", "7", "--gap", "1/100", "--max-denom", "10"});
    EXPECT_EQ(inf.code, cli::kExitInfeasible);
    EXPECT_EQ(Json::parse(inf.out)["status"], "infeasible");

    const Result over = run_cli(
        {"subdivide", "--lo", "0", "--hi", "1/1000", "--order", "1000", "--gap", "1/1000000", "--max-points", "10"});
    EXPECT_EQ(over.code, cli::kExitError);
}

TEST(Cli, SolveExitCodes) {
    const Result ok = run_cli({"solve", "--input", fixture("feasible.txt"), "--epsilon", "1/10"});
    EXPECT_EQ(ok.code, cli::kExitOk);
    const Json j = Json::parse(ok.out);
    EXPECT_EQ(j["status"], "feasible");
    EXPECT_EQ(j["solution"]["q"], "3");
    EXPECT_EQ(j["solution"]["ps"], Json::array({"1", "2"}));

    const Result inf = run_cli({"solve", "--input", fixture("infeasible.txt"), "--epsilon", "3/10"});
    EXPECT_EQ(inf.code, cli::kExitInfeasible);
    EXPECT_EQ(Json::parse(inf.out)["status"], "infeasible");

    const Result bad = run_cli({"solve", "--input", fixture("malformed.txt"), "--epsilon", "1/10"});
    EXPECT_EQ(bad.code, cli::kExitError);
    EXPECT_NE(bad.err.find("line 2"), std::string::npos);

    const Result missing = run_cli({"solve", "--input", fixture("no-such-file.txt"), "--epsilon", "1/10"});
    EXPECT_EQ(missing.code, cli::kExitError);
    EXPECT_NE(missing.err.find("cannot open"), std::string::npos);

    EXPECT_EQ(run_cli({"solve", "--input", fixture("feasible.txt"), "--epsilon", "0"}).code, cli::kExitError);
    EXPECT_EQ(run_cli({"solve", "--input", fixture("feasible.txt")}).code, cli::kExitError);
    EXPECT_EQ(run_cli({"bogus"}).code, cli::kExitError);
}

TEST(Cli, SolveCompose) {
    const Result r = run_cli({"solve", "--input", fixture("feasible.txt"), "--epsilon", "1/3", "--method", "compose"});
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["heuristic"], true);
    EXPECT_EQ(r.code, j["satisfies_constraints"].get<bool>() ? cli::kExitOk : cli::kExitInfeasible);
    EXPECT_EQ(j["check"]["overall"], j["satisfies_constraints"]);
}

TEST(Cli, StrictFlag) {
    const std::string path = ::testing::TempDir() + "half.txt";
    {
        std::ofstream f(path);
        f << "1/2 1\n";
    }
    EXPECT_EQ(Json::parse(run_cli({"solve", "--input", path, "--epsilon", "1/2"}).out)["solution"]["q"], "1");
    EXPECT_EQ(Json::parse(run_cli({"solve", "--input", path, "--epsilon", "1/2", "--strict"}).out)["solution"]["q"],
              "2");
}

TEST(Cli, DirichletAndCompare) {
    const Result d = run_cli({"dirichlet", "--input", fixture("feasible.txt"), "--T", "10"});
    EXPECT_EQ(d.code, cli::kExitOk);
    EXPECT_EQ(Json::parse(d.out)["solution"]["q"], "3");
    EXPECT_EQ(Json::parse(d.out)["q_bound"], "100");

    const Result c = run_cli({"compare", "--input", fixture("feasible.txt"), "--epsilon", "1/10", "--T", "10"});
    EXPECT_EQ(c.code, cli::kExitOk);
    const Json j = Json::parse(c.out);
    EXPECT_EQ(j["q_bound_dirichlet"], "100");
    EXPECT_EQ(j["constrained"]["solution"]["q"], "3");

    EXPECT_EQ(run_cli({"compare", "--input", fixture("mixed.txt"), "--epsilon", "1/10", "--T", "10"}).code,
              cli::kExitError);
    EXPECT_EQ(run_cli({"dirichlet", "--input", fixture("feasible.txt"), "--T", "1"}).code, cli::kExitError);
}

TEST(Cli, SweepCsvAndJson) {
    const Result csv =
        run_cli({"sweep", "--input", fixture("feasible.txt"), "--grid", "1/2,1/5,1/10", "--csv", "--threads", "2"});
    EXPECT_EQ(csv.code, cli::kExitOk);
    EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "epsilon,feasible,q,ps,max_error");

    const Result js = run_cli({"sweep", "--input", fixture("feasible.txt"), "--grid", "1/2,1/5,1/10"});
    EXPECT_EQ(Json::parse(js.out)["epsilon0"], "1/2");

    const Result lin = run_cli(
        {"sweep", "--input", fixture("feasible.txt"), "--eps-max", "1/2", "--eps-min", "1/10", "--points", "5"});
    EXPECT_EQ(Json::parse(lin.out)["grid"], Json::array({"1/2", "2/5", "3/10", "1/5", "1/10"}));

    const Result none = run_cli({"sweep", "--input", fixture("infeasible.txt"), "--grid", "3/10"});
    EXPECT_EQ(none.code, cli::kExitInfeasible);

    EXPECT_EQ(run_cli({"sweep", "--input", fixture("feasible.txt"), "--grid", "1/10,1/2"}).code, cli::kExitError);
    EXPECT_EQ(run_cli({"sweep", "--input", fixture("feasible.txt")}).code, cli::kExitError);
}

TEST(Cli, OutputIsDeterministic) {
    const std::vector<std::string> args = {"sweep", "--input", fixture("mixed.txt"), "--grid",
                                           "1/2,1/4,1/8,1/16,1/32,1/64"};
    const Result a = run_cli(args);
    const Result b = run_cli(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, b.code);
}

TEST(Cli, ScanBudgetFromEnvironment) {
    ::setenv(cli::kMaxScanEnv, "5", 1);
    const Result r = run_cli({"solve", "--input", fixture("mixed.txt"), "--epsilon", "1/100000"});
    ::setenv(cli::kMaxScanEnv, "not-a-number", 1);
    const Result bad = run_cli({"solve", "--input", fixture("feasible.txt"), "--epsilon", "1/10"});
    ::unsetenv(cli::kMaxScanEnv);
    EXPECT_EQ(r.code, cli::kExitError);
    EXPECT_NE(r.err.find("budget exceeded"), std::string::npos);
    EXPECT_EQ(bad.code, cli::kExitError);
}

TEST(Selftest, PassesAndReportsTotals) {
    std::ostringstream out;
    EXPECT_EQ(selftest(out), 0);
    EXPECT_NE(out.str().find(" 0 failures"), std::string::npos);
    EXPECT_EQ(out.str().find("FAIL"), std::string::npos);
}

TEST(Selftest, DetectsCorruptedGapFormula) {
    SelftestHooks hooks;
    hooks.gap_u = [](const FareyPair& base, const BigInt& i) { return gap_U(base, i) + Rational(BigInt(1), BigInt(1000000)); };
    std::ostringstream out;
    EXPECT_EQ(selftest(out, hooks), 1);
    EXPECT_NE(out.str().find("FAIL chain identity gap_U"), std::string::npos);
    EXPECT_NE(out.str().find("failed: chain identity gap_U"), std::string::npos);
    EXPECT_NE(out.str().find("PASS chain identity gap_V"), std::string::npos);
}
