#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(STEMCERT_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("stemcert_test_" + name);
}

}  // namespace

TEST(Cli, Adams) {
    EXPECT_EQ(run("adams --space cp2 --k 2 --elem mu").out, "2μ + μ²\n");
    EXPECT_EQ(run("adams --space hp2 --k 2 --elem phi").out, "4φ + φ²\n");
    EXPECT_EQ(run("adams --space s2 --k 5 --elem nu").out, "5ν\n");
    const auto j = nlohmann::json::parse(run("--json adams --space cp2 --k 3 --elem mu").out);
    EXPECT_EQ(j.at("coeffs"), (nlohmann::json{"3", "3"}));
}

TEST(Cli, EInvariant) {
    const auto r = run("einv --space s2-smash-cp2 --primes 2,3,5");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("DoesNotSplit, e = 1/2", 0), 0u) << r.out;
    const auto j = nlohmann::json::parse(run("--json einv --space hp2").out);
    EXPECT_EQ(j.at("e"), "1/12");
    EXPECT_EQ(j.at("order_lower_bound"), "12");
}

TEST(Cli, JOrderAndBernoulli) {
    const auto j = nlohmann::json::parse(run("--json jorder --t 2").out);
    EXPECT_EQ(j.at("m"), "24");
    EXPECT_EQ(j.at("methods").size(), 3u);
    EXPECT_EQ(run("bernoulli --n 4").out.rfind("B_4 = -1/30", 0), 0u);
    EXPECT_EQ(nlohmann::json::parse(run("--json bernoulli --n 2").out).at("value"), "1/6");
}

TEST(Cli, FederGitlerAndThom) {
    EXPECT_FALSE(nlohmann::json::parse(run("--json feder-gitler --n 1 --k 12 --l 0").out).at("equivalent").get<bool>());
    EXPECT_TRUE(nlohmann::json::parse(run("--json feder-gitler --n 1 --k 24 --l 0").out).at("equivalent").get<bool>());
    const auto t = nlohmann::json::parse(run("--json thom --family hp --n 1 --k 24").out);
    EXPECT_EQ(t.at("cells"), (nlohmann::json{96, 100}));
}

TEST(Cli, LinkingWithExportAndReimport) {
    const auto path = temp_file("fibers.json");
    const auto r = run("--json --seed 4 linking --export " + path.string());
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(std::abs(nlohmann::json::parse(r.out).at("rounded").get<long>()), 1);
    std::ifstream in(path);
    const auto curves = nlohmann::json::parse(in);
    const auto a = temp_file("a.json"), b = temp_file("b.json");
    std::ofstream(a) << curves.at("a").dump();
    std::ofstream(b) << curves.at("b").dump();
    const auto again = nlohmann::json::parse(run("--json linking --curve-a " + a.string() + " --curve-b " + b.string()).out);
    EXPECT_NEAR(std::abs(again.at("linking").get<double>()), 1, 0.02);
    for (const auto& p : {path, a, b}) std::filesystem::remove(p);
}

TEST(Cli, Lift) {
    EXPECT_EQ(nlohmann::json::parse(run("--json lift --loop gamma").out).at("monodromy"), -1);
    EXPECT_EQ(nlohmann::json::parse(run("--json lift --loop gamma-twice").out).at("monodromy"), 1);
    EXPECT_EQ(nlohmann::json::parse(run("--json --samples 4096 lift --loop gamma-matrix").out).at("monodromy"), -1);
    EXPECT_EQ(nlohmann::json::parse(run("--json lift --loop homotopy-beta --s 0.5").out).at("monodromy"), -1);
}

TEST(Cli, Reports) {
    EXPECT_EQ(run("report --stem 1").out.rfind("π₁^S = Z₂, generator η\n", 0), 0u);
    EXPECT_EQ(run("report --stem 2").out.rfind("π₂^S = Z₂, generator η²\n", 0), 0u);
    const auto j = nlohmann::json::parse(run("--json report --stem 3").out);
    EXPECT_EQ(j.at("conclusion"), "π₃^S = Z₂₄, generator ν");
    EXPECT_TRUE(j.at("replay_ok").get<bool>());
}

TEST(Cli, ExitCodeZeroOnSuccess) {
    EXPECT_EQ(run("report --stem 3").code, 0);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, ExitCodeTwoOnArgumentErrors) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("adams --space rp2 --k 2 --elem mu").code, 2);
    EXPECT_EQ(run("adams --space cp2 --k 2 --elem xi").code, 2);
    EXPECT_EQ(run("adams --space cp2 --k two --elem mu").code, 2);
    EXPECT_EQ(run("einv --space cp3").code, 2);
    EXPECT_EQ(run("bernoulli --n 3").code, 2);
    EXPECT_EQ(run("jorder --t 0").code, 2);
    EXPECT_EQ(run("report --stem 4").code, 2);
    EXPECT_EQ(run("lift --loop spiral").code, 2);
    EXPECT_EQ(run("linking --p1 1,0,0 --p2 1,0,0").code, 2);
    EXPECT_EQ(run("linking --curve-a /nonexistent.json --curve-b /nonexistent.json").code, 2);
}

TEST(Cli, ExitCodeThreeOnVerificationFailure) {
    // a gcd range of 3 cannot certify stability of m(2)
    EXPECT_EQ(run("jorder --t 2 --K 3 --N 12").code, 3);
}
