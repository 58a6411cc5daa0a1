#pragma once

// Equivalence-preserving rewrites with step-by-step traces. Every step records
// the whole formula before and after, the position it acted on, and the side
// condition that licensed it, so a trace can be re-checked semantically.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qc/formula.hpp"
#include "qc/model.hpp"

namespace qc {

enum class Rule {
    PushNegation,
    HoistLeft,
    HoistRight,
    Rename,
    AddVacuous,
    DropVacuous,
    UnfoldImplication,
    Reassociate,
    FlipEquality,
    ChoiceSchema,
    MergeGuardedDisjunction,
};

std::string_view rule_name(Rule rule);

struct RewriteStep {
    Rule rule;
    Formula before;
    Formula after;
    Path at;
    std::string justification;
};

class TraceError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class Trace {
public:
    explicit Trace(Formula start);

    // Builds a trace from raw steps without checking that they chain;
    // verify_trace reports a broken chain.
    static Trace from_steps(Formula start, std::vector<RewriteStep> steps);

    const Formula& start() const noexcept { return start_; }
    const Formula& end() const noexcept { return steps_.empty() ? start_ : steps_.back().after; }
    const std::vector<RewriteStep>& steps() const noexcept { return steps_; }
    bool empty() const noexcept { return steps_.empty(); }

    // Throws TraceError unless step.before == end().
    void append(RewriteStep step);

    // Appends the steps of `sub`, which rewrites the subformula of end() at `at`,
    // lifted to whole formulas.
    void append_at(const Trace& sub, const Path& at);

private:
    Formula start_;
    std::vector<RewriteStep> steps_;
};

// Negation normal form: negations end up on atoms only. ¬(p ∧ q) becomes
// p → ¬q so that bounded quantifiers keep their guards, ¬(p → q) becomes
// p ∧ ¬q and ¬(p ↔ q) becomes p ↔ ¬q.
Formula push_negation(const Formula& f);
Trace push_negation_trace(const Formula& f);

// Moves quantifiers outward across ∧, ∨ and → (flipping ∀/∃ out of an
// antecedent) whenever the bound variable is not free in the other operand,
// α-renaming the binder first when it is. The innermost, leftmost
// opportunity is taken first; the trace is empty when no rule applies.
Trace hoist(const Formula& f);

// Inserts Q v directly above the matrix, below the leading prefix. Throws
// FormulaError when v occurs free in the matrix.
Formula add_vacuous(const Formula& f, const Variable& v, Quantifier q);

// Removes the first quantifier whose variable does not occur in its body.
// Returns nullopt when there is none.
std::optional<Formula> drop_vacuous(const Formula& f);

// Rewrites p ∧ (q ∧ r) to (p ∧ q) ∧ r everywhere.
Formula reassociate(const Formula& f);

// Rewrites every atom lhs = rhs to rhs = lhs.
Formula flip_equality(const Formula& f, const Variable& lhs, const Variable& rhs);

// Combines ∃y Π(G ∧ P) ∨ ∃y Π(¬G ∧ Q) into ∃y Π[(G ∧ P) ∨ (¬G ∧ Q)] where Π is
// the shared rest of the prefix and the guard G mentions only y and variables
// bound outside the disjunction. Throws FormulaError when the shape does not fit.
Formula merge_guarded_disjunction(const Formula& f);

// Single-step helpers that append to a trace, acting on the subformula at `at`.
void unfold_implication_at(Trace& t, const Path& at);
void push_negation_at(Trace& t, const Path& at);
void reassociate_at(Trace& t, const Path& at);
void hoist_at(Trace& t, const Path& at);
void rename_at(Trace& t, const Path& at, const std::map<Variable, Variable>& map);
void flip_equality_at(Trace& t, const Path& at, const Variable& lhs, const Variable& rhs);
void add_vacuous_at(Trace& t, const Path& at, const Variable& v, Quantifier q);
void merge_guarded_disjunction_at(Trace& t, const Path& at);
// Replaces the reading `schema.a` by `schema.b` at `at`; the premise must hold
// in every structure up to size 3.
void apply_choice_schema_at(Trace& t, const Path& at, const SchemaInstance& schema);

std::optional<Path> find_subformula(const Formula& f, const Formula& target);

// Prenex form by push_negation followed by hoist. The end of the trace is not
// prenex when a quantifier sits under ↔.
Trace prenex(const Formula& f);

struct TraceVerdict {
    Verdict verdict;
    // Index of the first step whose endpoints are not equivalent.
    std::optional<std::size_t> failed_step;
};

// Checks every step's before ↔ after, universally closed, up to nmax. Throws
// TraceError when consecutive steps do not chain.
TraceVerdict verify_trace(const Trace& t, std::size_t nmax, const CheckOptions& options = {});

// Rewrites a sentence of the shape ∀x(H(x) → ∃y(y ∉ x ∧ C(y,x))) into the
// five-quantifier form ∀x∃y∀z∃a∀b[(y ∈ x ∧ A) ∨ (y ∉ x ∧ B)]. When `schema`
// is given, its A reading inside C is first replaced by the B reading.
Trace rewrite_to_five_quantifiers(const Formula& sentence, const std::optional<SchemaInstance>& schema);

}  // namespace qc
