#include <gtest/gtest.h>

#include <regex>

#include "qc/catalog.hpp"
#include "qc/parser.hpp"
#include "qc/report.hpp"

using namespace qc;

namespace {

std::string without_millis(const std::string& text) {
    static const std::regex millis{R"("millis": [0-9.eE+-]+)"};
    return std::regex_replace(text, millis, "\"millis\": 0");
}

SuiteOptions quick() {
    SuiteOptions o;
    o.nmax = 2;
    o.rank = 3;
    o.random_formulas = 100;
    return o;
}

}  // namespace

TEST(Witness, RoundTripsThroughJson) {
    Formula f = parse("A x. A y. x = y");
    Verdict v = check_valid(f, 2);
    ASSERT_FALSE(is_valid(v));
    Witness w = witness_from(std::get<Counterexample>(v), f);
    EXPECT_TRUE(verify_witness(w));
    Witness back = parse_witness_json(witness_json(w));
    EXPECT_EQ(back.structure, w.structure);
    EXPECT_EQ(back.assignment, w.assignment);
    EXPECT_EQ(back.formula, w.formula);
    EXPECT_TRUE(verify_witness(back));
    EXPECT_EQ(witness_json(back), witness_json(w));
}

TEST(Witness, SchemaFields) {
    FinStructure s{2};
    s.set_member(0, 1, true);
    Witness w{s, {{"x", 1}}, "x in x", {}, ""};
    std::string text = witness_json(w);
    EXPECT_NE(text.find("\"domain_size\": 2"), std::string::npos);
    EXPECT_NE(text.find("\"membership\""), std::string::npos);
    EXPECT_NE(text.find("\"assignment\""), std::string::npos);
    EXPECT_TRUE(verify_witness(w));
}

TEST(Witness, RejectsTrueFormulas) {
    FinStructure s{2};
    s.set_member(0, 1, true);
    EXPECT_FALSE(verify_witness(Witness{s, {{"x", 0}, {"y", 1}}, "x in y", {}, ""}));
    EXPECT_FALSE(verify_witness(Witness{std::nullopt, {}, "x in y", {}, ""}));
    EXPECT_THROW(parse_witness_json(R"({"domain_size": 1, "membership": [[0, 3]]})"), ModelError);
}

TEST(Suite, DefaultRunPasses) {
    SuiteResult r = verify_paper(SuiteOptions{.random_formulas = 500});
    EXPECT_TRUE(r.complete);
    for (const auto& report : r.reports) EXPECT_TRUE(report.passed) << report.check;
    EXPECT_TRUE(r.passed());
    EXPECT_GE(r.reports.size(), 40u);
}

TEST(Suite, SmallestParametersPass) {
    EXPECT_TRUE(verify_paper(quick()).passed());
}

TEST(Suite, RejectsBadParameters) {
    SuiteOptions o = quick();
    o.nmax = 1;
    EXPECT_THROW(verify_paper(o), std::invalid_argument);
    o = quick();
    o.rank = 2;
    EXPECT_THROW(verify_paper(o), std::invalid_argument);
}

TEST(Suite, ReportsAreDeterministic) {
    SuiteOptions o = quick();
    std::string a = without_millis(suite_json(verify_paper(o), o));
    std::string b = without_millis(suite_json(verify_paper(o), o));
    EXPECT_EQ(a, b);
}

TEST(Suite, BudgetMarksIncomplete) {
    SuiteOptions o = quick();
    o.budget = std::chrono::milliseconds{0};
    SuiteResult r = verify_paper(o);
    EXPECT_FALSE(r.complete);
    EXPECT_FALSE(r.passed());
    EXPECT_NE(suite_json(r, o).find("\"complete\": false"), std::string::npos);
}

TEST(Suite, CallbackSeesEveryReport) {
    SuiteOptions o = quick();
    std::size_t seen = 0;
    o.on_report = [&](const CheckReport&) { ++seen; };
    EXPECT_EQ(verify_paper(o).reports.size(), seen);
}

class FaultTest : public ::testing::TestWithParam<SuiteFaults> {};

TEST_P(FaultTest, FailsWithVerifiableWitness) {
    SuiteOptions o = quick();
    o.nmax = 3;
    o.rank = 4;
    o.faults = GetParam();
    SuiteResult r = verify_paper(o);
    EXPECT_FALSE(r.passed());
    std::size_t verified = 0;
    for (const auto& report : r.reports) {
        if (report.passed) continue;
        ASSERT_TRUE(report.witness.has_value()) << report.check;
        if (report.witness->structure) {
            EXPECT_TRUE(verify_witness(parse_witness_json(witness_json(*report.witness)))) << report.check;
            ++verified;
        }
    }
    EXPECT_GT(verified, 0u);
}

INSTANTIATE_TEST_SUITE_P(Faults, FaultTest,
                         ::testing::Values(SuiteFaults{.flip_quantifier = true}, SuiteFaults{.drop_conjunct = true},
                                           SuiteFaults{.wrong_patch_branch = true}),
                         [](const ::testing::TestParamInfo<SuiteFaults>& info) -> std::string {
                             if (info.param.flip_quantifier) return "FlipQuantifier";
                             if (info.param.drop_conjunct) return "DropConjunct";
                             return "WrongPatchBranch";
                         });
