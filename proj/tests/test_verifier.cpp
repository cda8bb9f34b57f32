#include <gtest/gtest.h>

#include "zv/verifier.hpp"

using namespace zv;
using namespace zv::verify;

namespace {

Params P(std::optional<int> n, std::optional<int> r, std::optional<int> j = std::nullopt) {
    Params p;
    p.n = n;
    p.r = r;
    p.j = j;
    return p;
}

}  // namespace

TEST(Verifier, RegistryOrder) {
    std::vector<std::string> names;
    for (auto& d : registry()) names.push_back(d.name);
    EXPECT_EQ(names, (std::vector<std::string>{"prop43", "prop45", "prop46", "prop47", "thm48", "claim2", "prop51", "prop53",
                                               "thm54", "appendix", "telescope", "poles", "partition", "ring_laws", "backend"}));
    for (auto& d : registry()) EXPECT_FALSE(d.citation.empty()) << d.name;
}

TEST(Verifier, SingleChecksPassInBothModes) {
    Settings s;
    for (auto [name, p] : {std::pair{"prop43", P(5, 2)}, std::pair{"prop45", P({}, 3)}, std::pair{"prop46", P(4, 3)},
                           std::pair{"prop47", P({}, 3)}, std::pair{"thm48", P({}, 4, 1)}, std::pair{"claim2", P({}, 3)},
                           std::pair{"prop51", P(7, 2)}, std::pair{"prop53", P(5, 3)}, std::pair{"thm54", P(5, 4)},
                           std::pair{"appendix", P(6, 2)}, std::pair{"telescope", P(5, 3)}, std::pair{"poles", P(5, 2)},
                           std::pair{"partition", P({}, 2)}}) {
        Report r = run_check(name, p, s);
        EXPECT_EQ(r.status, "pass") << name << ": " << r.detail;
        EXPECT_EQ(r.mode, "both");
    }
}

TEST(Verifier, BackendIsNumeric) {
    Report r = run_check("backend", Params{}, Settings{});
    EXPECT_EQ(r.status, "pass") << r.detail;
    EXPECT_EQ(r.mode, "numeric");
    ASSERT_TRUE(r.abs_err);
    EXPECT_LT(*r.abs_err, 1e-20);
}

TEST(Verifier, RangeViolationIsAnError) {
    Report r = run_check("prop46", P(9, 3), Settings{});
    EXPECT_EQ(r.status, "error");
    EXPECT_EQ(r.detail, "range: need r+1 <= n <= 2r-1");
    EXPECT_FALSE(r.abs_err);
    EXPECT_EQ(run_check("prop43", P({}, 2), Settings{}).detail, "range: missing parameter n");
}

TEST(Verifier, UnknownCheck) {
    Report r = run_check("prop99", Params{}, Settings{});
    EXPECT_EQ(r.status, "error");
}

TEST(Verifier, ReportSchema) {
    Report r = run_check("claim2", P({}, 2), Settings{});
    json o = r.to_json();
    for (auto key : {"check", "params", "mode", "status", "lhs", "rhs", "abs_err", "elapsed_ms", "facts_used"})
        EXPECT_TRUE(o.contains(key)) << key;
    EXPECT_EQ(o["params"], json::parse(R"({"r":2})"));
    Report t = run_check("thm48", P({}, 3, 0), Settings{});
    EXPECT_FALSE(t.facts_used.empty());
}

TEST(Verifier, SymbolicOnlyHasNoError) {
    Settings s;
    s.mode = RunMode::symbolic;
    Report r = run_check("prop45", P({}, 2), s);
    EXPECT_EQ(r.status, "pass");
    EXPECT_EQ(r.mode, "symbolic");
}

TEST(Verifier, PlanHonoursPins) {
    Settings s;
    auto jobs = plan({"thm48"}, s, P({}, 4));
    ASSERT_EQ(jobs.size(), 3u);
    for (auto& j : jobs) EXPECT_EQ(*j.params.r, 4);
    // fully pinned sets are kept even out of range, so the range error surfaces
    auto bad = plan({"prop46"}, s, P(9, 3));
    ASSERT_EQ(bad.size(), 1u);
    EXPECT_EQ(run_all(bad, s)[0].status, "error");
    EXPECT_TRUE(plan({"prop46"}, s, P(20, {})).empty());
}

TEST(Verifier, DeterministicAcrossThreadCounts) {
    Settings s;
    auto jobs = plan({"prop43", "prop46", "telescope"}, s, Params{});
    auto a = run_all(jobs, s, 1), b = run_all(jobs, s, 4);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].check, b[i].check);
        EXPECT_EQ(a[i].status, b[i].status);
        EXPECT_EQ(a[i].lhs, b[i].lhs);
        EXPECT_EQ(a[i].rhs, b[i].rhs);
        EXPECT_EQ(a[i].abs_err, b[i].abs_err);
    }
}

TEST(Verifier, NarrowWindowReportsTruncation) {
    Settings s;
    s.window = Window{0, 0};
    Report r = run_check("thm48", P({}, 3, 0), s);
    EXPECT_EQ(r.status, "error");
    EXPECT_NE(r.detail.find("window"), std::string::npos) << r.detail;
}
