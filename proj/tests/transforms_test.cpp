#include <gtest/gtest.h>

#include "qc/catalog.hpp"
#include "qc/parser.hpp"
#include "qc/random_formula.hpp"
#include "qc/transforms.hpp"

using namespace qc;

namespace {

const Catalog& cat() { return Catalog::standard(); }

CheckOptions closed() {
    CheckOptions o;
    o.close_free = true;
    return o;
}

bool negations_on_atoms(const Formula& f) {
    switch (f.kind()) {
    case Kind::Member:
    case Kind::Equal:
        return true;
    case Kind::Not:
        return is_atom(f.child().kind());
    case Kind::Forall:
    case Kind::Exists:
        return negations_on_atoms(f.child());
    default:
        return negations_on_atoms(f.left()) && negations_on_atoms(f.right());
    }
}

bool quantifier_under_iff(const Formula& f, bool inside = false) {
    switch (f.kind()) {
    case Kind::Member:
    case Kind::Equal:
        return false;
    case Kind::Not:
        return quantifier_under_iff(f.child(), inside);
    case Kind::Forall:
    case Kind::Exists:
        return inside || quantifier_under_iff(f.child(), inside);
    default: {
        bool now = inside || f.kind() == Kind::Iff;
        return quantifier_under_iff(f.left(), now) || quantifier_under_iff(f.right(), now);
    }
    }
}

}  // namespace

TEST(PushNegation, ThroughBoundedUniversal) {
    EXPECT_EQ(push_negation(parse("~A z. z in x -> a in z")), parse("E z. z in x & ~a in z"));
}

TEST(PushNegation, DoubleNegation) {
    EXPECT_EQ(push_negation(parse("~~a in z")), parse("a in z"));
}

TEST(PushNegation, GuardedConjunction) {
    EXPECT_EQ(push_negation(parse("~(a in z & E b. b in a)")), parse("a in z -> A b. ~b in a"));
    EXPECT_EQ(push_negation(parse("~(a in z | b in z)")), parse("~a in z & ~b in z"));
    EXPECT_EQ(push_negation(parse("~(a in z <-> b in z)")), parse("a in z <-> ~b in z"));
}

TEST(PushNegation, NegatedHypothesisMatchesChain) {
    Formula pushed = push_negation(cat().get("thm4.1-step2/0").formula);
    EXPECT_EQ(reassociate(pushed), cat().get("thm4.1-step2/1").formula);
}

TEST(PushNegation, RandomFormulasStayEquivalent) {
    RandomFormulaGenerator gen{31, {.max_depth = 4}};
    for (int i = 0; i < 200; ++i) {
        Formula f = gen.next();
        Formula g = push_negation(f);
        ASSERT_TRUE(negations_on_atoms(g)) << print(g);
        ASSERT_EQ(quantifier_count(g), quantifier_count(f));
        ASSERT_TRUE(is_valid(check_equiv(f, g, 3, closed()))) << print(f);
    }
}

TEST(Hoist, AntecedentFlips) {
    Trace t = hoist(parse("(E b. b in z) -> a in z"));
    EXPECT_EQ(t.end(), parse("A b. b in z -> a in z"));
    ASSERT_EQ(t.steps().size(), 1u);
    EXPECT_EQ(t.steps()[0].rule, Rule::HoistLeft);
    EXPECT_NE(t.steps()[0].justification.find("∃ leaves the antecedent as ∀"), std::string::npos);
    EXPECT_NE(t.steps()[0].justification.find("b not free in"), std::string::npos);
}

TEST(Hoist, StepOneOfTheChain) {
    Trace t = hoist(cat().get("thm4.1-step1/2").formula);
    EXPECT_EQ(t.end(), cat().get("thm4.1-step1/3").formula);
    EXPECT_EQ(t.steps().size(), 3u);
}

TEST(Hoist, RenamesWhenTheBinderIsFreeElsewhere) {
    Trace t = hoist(parse("(A x. x in y) & x in x"));
    ASSERT_EQ(t.steps().size(), 2u);
    EXPECT_EQ(t.steps()[0].rule, Rule::Rename);
    EXPECT_EQ(t.end(), parse("A x'. x' in y & x in x"));
    EXPECT_TRUE(is_valid(verify_trace(t, 3).verdict));
}

TEST(Hoist, NothingToDo) {
    Trace t = hoist(parse("A x. x in y"));
    EXPECT_TRUE(t.empty());
    EXPECT_TRUE(hoist(parse("(A x. x in y) <-> y in y")).empty());
}

TEST(Hoist, RandomFormulasReachPrenexForm) {
    RandomFormulaGenerator gen{32, {.max_depth = 4}};
    for (int i = 0; i < 200; ++i) {
        Formula f = push_negation(gen.next());
        Trace t = hoist(f);
        ASSERT_EQ(quantifier_count(t.end()), quantifier_count(f));
        if (!quantifier_under_iff(f)) ASSERT_TRUE(is_prenex(t.end())) << print(f);
        auto v = verify_trace(t, 2, closed());
        ASSERT_FALSE(v.failed_step.has_value()) << print(f);
    }
}

TEST(Prenex, ThreeQuantifierChoice) {
    Trace t = prenex(cat().get("C3").formula);
    EXPECT_EQ(prefix_pattern(t.end()), "∀∃∀");
    EXPECT_TRUE(is_valid(verify_trace(t, 3, closed()).verdict));
}

TEST(AddVacuous, LastStepOfTheChain) {
    Formula f = cat().get("thm4.1-step2/4").formula;
    Formula g = add_vacuous(f, var("b"), Quantifier::Forall);
    EXPECT_EQ(g, cat().get("thm4.1-step2/5").formula);
    EXPECT_EQ(quantifier_count(g), quantifier_count(f) + 1);
}

TEST(AddVacuous, EquivalentAndChecked) {
    Formula f = parse("x = x");
    EXPECT_TRUE(is_valid(check_equiv(add_vacuous(f, var("y"), Quantifier::Exists), f, 3)));
    EXPECT_THROW(add_vacuous(parse("x in y"), var("y"), Quantifier::Forall), FormulaError);
    EXPECT_THROW(add_vacuous(parse("A y. x in y"), var("y"), Quantifier::Forall), FormulaError);
}

TEST(DropVacuous, RemovesFirstUnusedBinder) {
    EXPECT_EQ(drop_vacuous(parse("A x. E y. x in x")), parse("A x. x in x"));
    EXPECT_FALSE(drop_vacuous(parse("A x. x in x")).has_value());
    EXPECT_EQ(drop_vacuous(parse("a in b & E c. a in a")), parse("a in b & a in a"));
}

TEST(Reassociate, FoldsRightNestedConjunctions) {
    EXPECT_EQ(reassociate(parse("a in b & (c in d & e in f)")), parse("a in b & c in d & e in f"));
    EXPECT_EQ(reassociate(parse("a in b & (c in d & (e in f & g in h))")), parse("a in b & c in d & e in f & g in h"));
}

TEST(FlipEquality, OnlyMatchingOrientation) {
    EXPECT_EQ(flip_equality(parse("y = a & a = y"), var("y"), var("a")), parse("a = y & a = y"));
}

TEST(MergeGuardedDisjunction, Shapes) {
    Formula ok = parse("(E y. A z. y in x & z in y) | (E y. A z. ~y in x & z = z)");
    EXPECT_EQ(merge_guarded_disjunction(ok), parse("E y. A z. y in x & z in y | ~y in x & z = z"));
    EXPECT_THROW(merge_guarded_disjunction(parse("(E y. y in x & y = y) | (E y. y in x & y = y)")), FormulaError);
    EXPECT_THROW(merge_guarded_disjunction(parse("(E y. A z. z in x & y = y) | (E y. A z. ~z in x & y = y)")),
                 FormulaError);
    EXPECT_THROW(merge_guarded_disjunction(parse("(A y. y in x & y = y) | (A y. ~y in x & y = y)")), FormulaError);
    EXPECT_THROW(merge_guarded_disjunction(parse("a in b")), FormulaError);
}

TEST(Trace, AppendRejectsGaps) {
    Trace t{parse("a in b")};
    EXPECT_THROW(t.append({Rule::Rename, parse("b in a"), parse("c in a"), {}, ""}), TraceError);
}

TEST(VerifyTrace, BrokenChain) {
    Formula a = parse("a in b");
    Trace t = Trace::from_steps(a, {{Rule::Rename, parse("b in a"), parse("c in a"), {}, ""}});
    EXPECT_THROW(verify_trace(t, 2), TraceError);
}

TEST(VerifyTrace, RenameStep) {
    Formula f = parse("A x. E y. x in y");
    Trace t{f};
    rename_at(t, {}, {{var("x"), var("y")}, {var("y"), var("x")}});
    EXPECT_EQ(t.end(), parse("A y. E x. y in x"));
    EXPECT_TRUE(is_valid(verify_trace(t, 3).verdict));
}

TEST(VerifyTrace, HoistWithoutFlipIsCaught) {
    Formula before = parse("(E b. b in z) -> a in z");
    Formula wrong = parse("E b. b in z -> a in z");
    Trace t = Trace::from_steps(before, {{Rule::HoistLeft, before, wrong, {}, "corrupted"}});
    TraceVerdict v = verify_trace(t, 2, closed());
    ASSERT_TRUE(v.failed_step.has_value());
    EXPECT_EQ(*v.failed_step, 0u);
    EXPECT_LE(std::get<Counterexample>(v.verdict).structure.size(), 2u);
}

TEST(Pipeline, ReproducesTheFiveQuantifierSentence) {
    Trace t = rewrite_to_five_quantifiers(cat().get("AC*").formula, cat().choice_schema());
    EXPECT_EQ(t.start(), cat().get("AC*").formula);
    EXPECT_EQ(t.end(), cat().get("AC**").formula);
    TraceVerdict v = verify_trace(t, 3);
    EXPECT_FALSE(v.failed_step.has_value());
    for (const auto& s : t.steps()) EXPECT_FALSE(s.justification.empty()) << rule_name(s.rule);
}

TEST(Pipeline, ShortVariantNeedsNoSchema) {
    Trace t = rewrite_to_five_quantifiers(cat().get("AC-bar*").formula, std::nullopt);
    EXPECT_EQ(t.end(), cat().get("AC-bar**").formula);
    EXPECT_FALSE(verify_trace(t, 3).failed_step.has_value());
}

TEST(Pipeline, RejectsOtherShapes) {
    EXPECT_THROW(rewrite_to_five_quantifiers(cat().get("AC").formula, cat().choice_schema()), FormulaError);
    EXPECT_THROW(rewrite_to_five_quantifiers(parse("a in b"), std::nullopt), FormulaError);
}

TEST(ChoiceSchemaStep, RequiresTheAReading) {
    Trace t{parse("a in b")};
    EXPECT_THROW(apply_choice_schema_at(t, {}, cat().choice_schema()), FormulaError);
}
