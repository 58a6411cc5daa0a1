#include <gtest/gtest.h>

#include "qc/catalog.hpp"
#include "qc/model.hpp"
#include "qc/parser.hpp"
#include "support.hpp"

using namespace qc;

namespace {

const Catalog& cat() { return Catalog::standard(); }

CheckOptions closed() {
    CheckOptions o;
    o.close_free = true;
    return o;
}

}  // namespace

TEST(Catalog, FiveQuantifierSentence) {
    const CatalogEntry& e = cat().get("AC**");
    EXPECT_EQ(quantifier_count(e.formula), 5u);
    EXPECT_EQ(prefix_pattern(e.formula), "∀∃∀∃∀");
    EXPECT_TRUE(e.declared_free_vars.empty());
}

TEST(Catalog, ChoiceSetSignature) {
    const CatalogEntry& e = cat().get("C");
    EXPECT_EQ(qc::testing::names(free_vars(e.formula)), (std::set<std::string>{"x", "y"}));
}

TEST(Catalog, UnknownNameListsValidNames) {
    try {
        cat().get("nonsense");
        FAIL();
    } catch (const UnknownNameError& e) {
        std::string what = e.what();
        EXPECT_NE(what.find("nonsense"), std::string::npos);
        EXPECT_NE(what.find("AC**"), std::string::npos);
    }
    EXPECT_FALSE(cat().contains("nonsense"));
}

TEST(Catalog, Aliases) {
    EXPECT_EQ(cat().get("AC̄**").name, "AC-bar**");
    EXPECT_EQ(cat().get("C̄").name, "C-bar");
    EXPECT_EQ(cat().get("AC_h,1").name, "AC_h1");
}

TEST(Catalog, EntriesAreConsistent) {
    for (const auto& name : cat().names()) {
        const CatalogEntry& e = cat().get(name);
        EXPECT_EQ(parse(e.official_rendering), e.formula) << name;
        std::set<Variable> declared(e.declared_free_vars.begin(), e.declared_free_vars.end());
        EXPECT_EQ(declared, free_vars(e.formula)) << name;
        EXPECT_EQ(qc::testing::free_names(e.formula), qc::testing::names(declared)) << name;
        EXPECT_FALSE(e.summary.empty()) << name;
    }
}

TEST(Catalog, QuantifierCounts) {
    EXPECT_EQ(quantifier_count(cat().get("C3").formula), 3u);
    EXPECT_EQ(quantifier_count(cat().get("AC-bar**").formula), 5u);
    EXPECT_EQ(quantifier_count(cat().get("B").formula), 0u);
    EXPECT_EQ(quantifier_count(cat().get("B-bar").formula), 0u);
    EXPECT_EQ(quantifier_count(cat().get("choice-B").formula), 2u);
    EXPECT_EQ(quantifier_count(cat().get("choice-A").formula), 3u);
}

TEST(Catalog, PhiIsBounded) {
    EXPECT_TRUE(is_bounded(cat().get("phi").formula));
    EXPECT_EQ(qc::testing::names(free_vars(cat().get("phi").formula)), (std::set<std::string>{"x", "z", "z_x"}));
}

TEST(Catalog, StepTwoChain) {
    auto chain = cat().list_chain("thm4.1-step2");
    ASSERT_EQ(chain.size(), 6u);
    EXPECT_EQ(chain.front().formula, Formula::negation(cat().get("AC_h*").formula));
    EXPECT_EQ(chain.back().formula, parse("E y. A z. E a. A b. y in x & (z in y -> a in x & ~a = y & z in a)"));
    EXPECT_FALSE(chain[2].note.empty());
}

TEST(Catalog, StepOneChain) {
    auto chain = cat().list_chain("thm4.1-step1");
    ASSERT_EQ(chain.size(), 4u);
    EXPECT_EQ(chain.back().formula,
              Formula::exists(var("y"), Formula::forall(var("z"), Formula::exists(var("a"), Formula::forall(var("b"),
                  Formula::conjunction(not_member(var("y"), var("x")), cat().get("B").formula))))));
    EXPECT_THROW(cat().list_chain("nope"), UnknownNameError);
    EXPECT_EQ(cat().chain_names().size(), 3u);
}

TEST(Catalog, ChainsAreEquivalentStepByStep) {
    for (const auto& chain : cat().chain_names()) {
        auto members = cat().list_chain(chain);
        for (std::size_t i = 0; i + 1 < members.size(); ++i) {
            EXPECT_TRUE(is_valid(check_equiv(members[i].formula, members[i + 1].formula, 3)))
                << members[i].name << " vs " << members[i + 1].name;
        }
    }
}

TEST(Catalog, HypothesisStrengthening) {
    EXPECT_TRUE(is_valid(check_valid(cat().get("hyp-strengthening").formula, 4)));
}

TEST(Catalog, ChoiceSetForms) {
    EXPECT_TRUE(is_valid(check_equiv(cat().get("C").formula, cat().get("C-unique").formula, 4)));
}

TEST(Catalog, ChoiceSchemaInstance) {
    EXPECT_EQ(cat().choice_schema().statement(), cat().get("choice-schema").formula);
    EXPECT_TRUE(is_valid(check_valid(cat().get("choice-schema").formula, 3, closed())));
}

TEST(Catalog, FaultsChangeTheFormulas) {
    Catalog flipped{CatalogFaults{.flip_quantifier = true}};
    EXPECT_EQ(prefix_pattern(flipped.get("AC**").formula), "∀∃∀∃∃");
    EXPECT_EQ(parse(flipped.get("AC**").official_rendering), flipped.get("AC**").formula);
    EXPECT_FALSE(is_valid(check_equiv(flipped.get("AC*").formula, flipped.get("AC**").formula, 3)));

    Catalog dropped{CatalogFaults{.drop_conjunct = true}};
    EXPECT_LT(atom_count(dropped.get("B").formula), atom_count(cat().get("B").formula));
    EXPECT_EQ(parse(dropped.get("B").official_rendering), dropped.get("B").formula);
    EXPECT_FALSE(is_valid(check_equiv(dropped.get("AC*").formula, dropped.get("AC**").formula, 3)));
}
