#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

struct CliRun {
    int code = -1;
    std::vector<nlohmann::json> lines;
    std::string raw;
};

CliRun run(const std::string& args) {
    CliRun r;
    std::string cmd = std::string(ZV_CLI) + " " + args + " 2>/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    char buf[1 << 16];
    while (fgets(buf, sizeof buf, f)) {
        r.raw += buf;
        if (buf[0] == '{') r.lines.push_back(nlohmann::json::parse(buf));
    }
    int st = pclose(f);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string temp_file(const std::string& name, const std::string& body) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << body;
    return p.string();
}

}  // namespace

TEST(Cli, ListsRegistry) {
    CliRun r = run("--list");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.raw.rfind("prop43\t", 0), 0u);
    EXPECT_NE(r.raw.find("backend\t"), std::string::npos);
}

TEST(Cli, PinnedCheck) {
    CliRun r = run("--check thm48 --r 4 --j 2");
    EXPECT_EQ(r.code, 0);
    ASSERT_EQ(r.lines.size(), 1u);
    EXPECT_EQ(r.lines[0]["params"], nlohmann::json::parse(R"({"j":2,"r":4})"));
    EXPECT_EQ(r.lines[0]["status"], "pass");
}

TEST(Cli, RangeErrorExitsTwo) {
    CliRun r = run("--check prop46 --r 3 --n 9");
    EXPECT_EQ(r.code, 2);
    ASSERT_EQ(r.lines.size(), 1u);
    EXPECT_EQ(r.lines[0]["status"], "error");
    EXPECT_EQ(r.lines[0]["detail"], "range: need r+1 <= n <= 2r-1");
}

TEST(Cli, BadArgumentsExitTwo) {
    EXPECT_EQ(run("--check nope").code, 2);
    EXPECT_EQ(run("--window 3,1").code, 2);
    EXPECT_EQ(run("--mode fast").code, 2);
    EXPECT_EQ(run("--prec 5").code, 2);
}

TEST(Cli, ModesAndPrecision) {
    CliRun s = run("--check claim2 --r 2 --mode symbolic");
    EXPECT_EQ(s.code, 0);
    EXPECT_EQ(s.lines.at(0)["mode"], "symbolic");
    EXPECT_TRUE(s.lines.at(0)["abs_err"].is_null());
    CliRun n = run("--check claim2 --r 2 --mode numeric --prec 60");
    EXPECT_EQ(n.code, 0);
    EXPECT_LT(n.lines.at(0)["abs_err"].get<double>(), 1e-50);
}

TEST(Cli, ScriptExitCodes) {
    EXPECT_EQ(run("--script " + std::string(ZV_SCRIPTS) + "/constants.zv").code, 0);
    EXPECT_EQ(run("--script " + temp_file("zv_fail.zv", "assert c(3,1) == xiF(3)\n")).code, 1);
    EXPECT_EQ(run("--script " + temp_file("zv_syntax.zv", "assert c(3,1) = 1\n")).code, 2);
}

TEST(Cli, WritesToFile) {
    auto out = (std::filesystem::temp_directory_path() / "zv_out.jsonl").string();
    CliRun r = run("--check telescope --r 3 --out " + out);
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.lines.empty());
    std::ifstream in(out);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) ++n;
    EXPECT_EQ(n, 2);
}
