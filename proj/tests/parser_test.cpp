#include <gtest/gtest.h>

#include "qc/catalog.hpp"
#include "qc/parser.hpp"
#include "qc/random_formula.hpp"

using namespace qc;

namespace {

Formula in(const char* a, const char* b) { return Formula::member(var(a), var(b)); }

}  // namespace

TEST(Parse, GrammarExample) {
    Formula expected = Formula::forall(var("z"), Formula::implication(in("z", "x"), Formula::exists(var("a"), in("a", "z"))));
    EXPECT_EQ(parse("A z. z in x -> E a. a in z"), expected);
    EXPECT_EQ(parse("forall z. z in x -> exists a. a in z"), expected);
    EXPECT_EQ(parse("∀z. z ∈ x → ∃a. a ∈ z"), expected);
}

TEST(Parse, Precedence) {
    EXPECT_EQ(parse("~a in b & c in d | e in f -> g in h <-> i in j"),
              Formula::biconditional(
                  Formula::implication(
                      Formula::disjunction(Formula::conjunction(Formula::negation(in("a", "b")), in("c", "d")), in("e", "f")),
                      in("g", "h")),
                  in("i", "j")));
}

TEST(Parse, ImplicationIsRightAssociative) {
    EXPECT_EQ(parse("a in b -> c in d -> e in f"),
              Formula::implication(in("a", "b"), Formula::implication(in("c", "d"), in("e", "f"))));
}

TEST(Parse, ConjunctionIsLeftAssociative) {
    EXPECT_EQ(parse("a in b & c in d & e in f"),
              Formula::conjunction(Formula::conjunction(in("a", "b"), in("c", "d")), in("e", "f")));
}

TEST(Parse, DottedQuantifierScopesRight) {
    EXPECT_EQ(parse("a in b & A x. x in a | x in b"),
              Formula::conjunction(in("a", "b"),
                                   Formula::forall(var("x"), Formula::disjunction(in("x", "a"), in("x", "b")))));
}

TEST(Parse, UndottedQuantifierTakesOneOperand) {
    EXPECT_EQ(parse("∃b b ∈ z → a ∈ z"), Formula::implication(Formula::exists(var("b"), in("b", "z")), in("a", "z")));
    EXPECT_EQ(parse("∀z ∃a ∀b (a ∈ z)"), parse("A z. E a. A b. a in z"));
}

TEST(Parse, Sugar) {
    EXPECT_EQ(parse("a ∉ z"), Formula::negation(in("a", "z")));
    EXPECT_EQ(parse("a ≠ z"), Formula::negation(Formula::equal(var("a"), var("z"))));
    EXPECT_EQ(parse("a != z"), parse("a ≠ z"));
    EXPECT_EQ(parse("∀z ∈ x z = z"), forall_in(var("z"), var("x"), Formula::equal(var("z"), var("z"))));
    EXPECT_EQ(parse("∃a ∈ z a = a"), exists_in(var("a"), var("z"), Formula::equal(var("a"), var("a"))));
    EXPECT_EQ(parse("[a in b]"), in("a", "b"));
    EXPECT_EQ(parse("a in b # trailing comment\n"), in("a", "b"));
}

TEST(Parse, PrimedAndStarredNames) {
    EXPECT_EQ(parse("z' in z*"), in("z'", "z*"));
    EXPECT_EQ(parse("z_x = z_1"), Formula::equal(var("z_x"), var("z_1")));
}

TEST(Parse, MissingOperandAtEnd) {
    try {
        parse("x in");
        FAIL() << "expected a syntax error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line, 1u);
        EXPECT_EQ(e.column, 5u);
    }
}

TEST(Parse, ErrorPositions) {
    try {
        parse("a in b &\n  & c in d");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line, 2u);
        EXPECT_EQ(e.column, 3u);
    }
    EXPECT_THROW(parse("A in. in in x"), ParseError);
    EXPECT_THROW(parse("a in b)"), ParseError);
    EXPECT_THROW(parse("(a in b"), ParseError);
    EXPECT_THROW(parse("a @ b"), ParseError);
    EXPECT_THROW(parse(""), ParseError);
}

TEST(Parse, ReservedWordsAreNotVariables) {
    EXPECT_THROW(parse("A = x"), ParseError);
    EXPECT_THROW(parse("forall in x"), ParseError);
    EXPECT_THROW(parse("E x. x in exists"), ParseError);
}

TEST(Print, MinimalParentheses) {
    EXPECT_EQ(print(Formula::conjunction(in("a", "z"), in("a", "y"))), "a in z & a in y");
    EXPECT_EQ(print(parse("(a in b -> c in d) -> e in f")), "(a in b -> c in d) -> e in f");
    EXPECT_EQ(print(parse("a in b -> (c in d -> e in f)")), "a in b -> c in d -> e in f");
    EXPECT_EQ(print(parse("a in b & (c in d & e in f)")), "a in b & (c in d & e in f)");
    EXPECT_EQ(print(parse("(A x. x in y) & y in y")), "(A x. x in y) & y in y");
    EXPECT_EQ(print(parse("y in y & A x. x in y")), "y in y & A x. x in y");
    EXPECT_EQ(print(parse("~(a in b)")), "~a in b");
    EXPECT_EQ(print(parse("~A x. x in b")), "~A x. x in b");
    EXPECT_EQ(print(parse("a ∈ z ∧ a ≠ y"), PrintStyle::Unicode), "a ∈ z ∧ ¬a = y");
}

TEST(Print, MatrixBHasNineAtoms) {
    std::string text = print(Catalog::standard().get("B").formula);
    Formula back = parse(text);
    EXPECT_EQ(quantifier_count(back), 0u);
    EXPECT_EQ(atom_count(back), 9u);
}

TEST(RoundTrip, RandomFormulas) {
    RandomFormulaGenerator gen{2024};
    for (int i = 0; i < 5000; ++i) {
        Formula f = gen.next();
        std::string ascii = print(f);
        ASSERT_EQ(parse(ascii), f) << ascii;
        ASSERT_EQ(parse(print(f, PrintStyle::Unicode)), f) << ascii;
        ASSERT_EQ(print(parse(ascii)), ascii);
    }
}

TEST(RoundTrip, CatalogRenderings) {
    const Catalog& cat = Catalog::standard();
    for (const auto& name : cat.names()) {
        const CatalogEntry& e = cat.get(name);
        EXPECT_EQ(parse(e.official_rendering), e.formula) << name;
        EXPECT_EQ(parse(print(e.formula)), e.formula) << name;
    }
    EXPECT_EQ(quantifier_count(parse(cat.get("AC**").official_rendering)), 5u);
}

TEST(TokenCount, Convention) {
    EXPECT_EQ(token_count("a∈z"), 3u);
    EXPECT_EQ(token_count("a ∉ z"), 4u);
    EXPECT_EQ(token_count("(a ∈ z ∧ a ≠ y)"), 10u);
    EXPECT_EQ(token_count("∀x x = x"), 5u);
    EXPECT_EQ(token_count("∀z ∈ x z = z"), 9u);
    EXPECT_THROW(token_count("a ∈"), ParseError);
}

TEST(TokenCount, ShortenedSentenceSavesSixteen) {
    const Catalog& cat = Catalog::standard();
    auto full = token_count(cat.get("AC**").official_rendering);
    auto shorter = token_count(cat.get("AC-bar**").official_rendering);
    EXPECT_EQ(full - shorter, 16u);
    SurfaceStats b = surface_stats(cat.get("B").official_rendering);
    SurfaceStats b_bar = surface_stats(cat.get("B-bar").official_rendering);
    EXPECT_EQ(b.atoms - b_bar.atoms, 3u);
    EXPECT_EQ(b.connectives - b_bar.connectives, 3u);
    EXPECT_EQ(b.parentheses - b_bar.parentheses, 4u);
}
