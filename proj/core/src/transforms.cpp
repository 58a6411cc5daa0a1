#include "qc/transforms.hpp"

#include "qc/parser.hpp"

namespace qc {

std::string_view rule_name(Rule rule) {
    switch (rule) {
    case Rule::PushNegation: return "push_negation";
    case Rule::HoistLeft: return "hoist_left";
    case Rule::HoistRight: return "hoist_right";
    case Rule::Rename: return "rename";
    case Rule::AddVacuous: return "add_vacuous";
    case Rule::DropVacuous: return "drop_vacuous";
    case Rule::UnfoldImplication: return "unfold_implication";
    case Rule::Reassociate: return "reassociate";
    case Rule::FlipEquality: return "flip_equality";
    case Rule::ChoiceSchema: return "choice_schema";
    case Rule::MergeGuardedDisjunction: return "merge_guarded_disjunction";
    }
    return "?";
}

Trace::Trace(Formula start) : start_(std::move(start)) {}

Trace Trace::from_steps(Formula start, std::vector<RewriteStep> steps) {
    Trace t{std::move(start)};
    t.steps_ = std::move(steps);
    return t;
}

void Trace::append(RewriteStep step) {
    if (!(step.before == end())) {
        throw TraceError("step " + std::string{rule_name(step.rule)} + " does not start where the trace ends");
    }
    steps_.push_back(std::move(step));
}

void Trace::append_at(const Trace& sub, const Path& at) {
    if (!(subformula_at(end(), at) == sub.start())) {
        throw TraceError("sub-trace does not start at the subformula " + to_string(at));
    }
    for (const auto& s : sub.steps()) {
        Path where = at;
        where.insert(where.end(), s.at.begin(), s.at.end());
        Formula before = end();
        Formula after = replace_at(before, at, s.after);
        append({s.rule, std::move(before), std::move(after), std::move(where), s.justification});
    }
}

namespace {

Formula negated(const Formula& f);

Formula positive(const Formula& f) {
    switch (f.kind()) {
    case Kind::Member:
    case Kind::Equal:
        return f;
    case Kind::Not:
        return negated(f.child());
    case Kind::Forall:
    case Kind::Exists:
        return Formula::quantified(f.quantifier(), f.bound(), positive(f.child()));
    default:
        return Formula::binary(f.kind(), positive(f.left()), positive(f.right()));
    }
}

// Negation normal form of ¬f.
Formula negated(const Formula& f) {
    switch (f.kind()) {
    case Kind::Member:
    case Kind::Equal:
        return Formula::negation(f);
    case Kind::Not:
        return positive(f.child());
    case Kind::And:
        return Formula::implication(positive(f.left()), negated(f.right()));
    case Kind::Or:
        return Formula::conjunction(negated(f.left()), negated(f.right()));
    case Kind::Implies:
        return Formula::conjunction(positive(f.left()), negated(f.right()));
    case Kind::Iff:
        return Formula::biconditional(positive(f.left()), negated(f.right()));
    case Kind::Forall:
        return Formula::exists(f.bound(), negated(f.child()));
    case Kind::Exists:
        return Formula::forall(f.bound(), negated(f.child()));
    }
    return f;
}

Quantifier flip(Quantifier q) { return q == Quantifier::Forall ? Quantifier::Exists : Quantifier::Forall; }

std::string symbol(Quantifier q) { return q == Quantifier::Forall ? "∀" : "∃"; }

bool hoistable(const Formula& f) {
    if (!is_binary(f.kind()) || f.kind() == Kind::Iff) return false;
    return is_quantifier(f.left().kind()) || is_quantifier(f.right().kind());
}

// First hoistable node in post-order (children first, left to right).
std::optional<Path> next_hoist(const Formula& f, Path& at) {
    if (is_atom(f.kind())) return std::nullopt;
    if (is_binary(f.kind())) {
        for (std::uint8_t side : {std::uint8_t{0}, std::uint8_t{1}}) {
            at.push_back(side);
            auto found = next_hoist(side == 0 ? f.left() : f.right(), at);
            at.pop_back();
            if (found) return found;
        }
    } else {
        at.push_back(0);
        auto found = next_hoist(f.child(), at);
        at.pop_back();
        if (found) return found;
    }
    if (hoistable(f)) return at;
    return std::nullopt;
}

}  // namespace

Formula push_negation(const Formula& f) { return positive(f); }

Trace push_negation_trace(const Formula& f) {
    Trace t{f};
    Formula g = push_negation(f);
    if (!(g == f)) {
        t.append({Rule::PushNegation, f, std::move(g), {}, "¬∀ ⇒ ∃¬, ¬∃ ⇒ ∀¬, ¬(p→q) ⇒ p∧¬q, ¬(p∧q) ⇒ p→¬q, ¬(p∨q) ⇒ ¬p∧¬q, ¬¬p ⇒ p"});
    }
    return t;
}

Trace hoist(const Formula& f) {
    Trace t{f};
    while (true) {
        Path at;
        auto where = next_hoist(t.end(), at);
        if (!where) break;
        const Formula node = subformula_at(t.end(), *where);
        const bool from_left = is_quantifier(node.left().kind());
        const std::uint8_t side = from_left ? 0 : 1;
        Formula quant = from_left ? node.left() : node.right();
        const Formula& bystander = from_left ? node.right() : node.left();

        if (occurs_free(bystander, quant.bound())) {
            std::set<Variable> taken = all_vars(node);
            Variable fresh = fresh_variable(quant.bound(), taken);
            Formula renamed = rename(quant, {{quant.bound(), fresh}});
            Path qpath = *where;
            qpath.push_back(side);
            Formula before = t.end();
            Formula after = replace_at(before, qpath, renamed);
            t.append({Rule::Rename, std::move(before), std::move(after), qpath,
                      "α-renaming " + quant.bound().name() + " to " + fresh.name() + ", which is free in " +
                          print(bystander, PrintStyle::Unicode)});
            quant = renamed;
        }

        Quantifier q = quant.quantifier();
        std::string why = quant.bound().name() + " not free in " + print(bystander, PrintStyle::Unicode);
        if (from_left && node.kind() == Kind::Implies) {
            why += "; " + symbol(q) + " leaves the antecedent as " + symbol(flip(q));
            q = flip(q);
        }
        Formula body = from_left ? Formula::binary(node.kind(), quant.child(), node.right())
                                 : Formula::binary(node.kind(), node.left(), quant.child());
        Formula before = t.end();
        Formula after = replace_at(before, *where, Formula::quantified(q, quant.bound(), std::move(body)));
        t.append({from_left ? Rule::HoistLeft : Rule::HoistRight, std::move(before), std::move(after), *where, why});
    }
    return t;
}

Formula add_vacuous(const Formula& f, const Variable& v, Quantifier q) {
    if (occurs_free(f, v)) {
        throw FormulaError("add_vacuous: " + v.name() + " is free in the formula");
    }
    Prefix p = split_prefix(f);
    if (occurs_free(p.matrix, v)) {
        throw FormulaError("add_vacuous: " + v.name() + " is bound by the prefix and used in the matrix");
    }
    p.binders.emplace_back(q, v);
    return wrap_prefix(p.binders, p.matrix);
}

std::optional<Formula> drop_vacuous(const Formula& f) {
    switch (f.kind()) {
    case Kind::Member:
    case Kind::Equal:
        return std::nullopt;
    case Kind::Forall:
    case Kind::Exists:
        if (!occurs_free(f.child(), f.bound())) return f.child();
        if (auto inner = drop_vacuous(f.child())) return Formula::quantified(f.quantifier(), f.bound(), *inner);
        return std::nullopt;
    case Kind::Not:
        if (auto inner = drop_vacuous(f.child())) return Formula::negation(*inner);
        return std::nullopt;
    default:
        if (auto l = drop_vacuous(f.left())) return Formula::binary(f.kind(), *l, f.right());
        if (auto r = drop_vacuous(f.right())) return Formula::binary(f.kind(), f.left(), *r);
        return std::nullopt;
    }
}

Formula reassociate(const Formula& f) {
    switch (f.kind()) {
    case Kind::Member:
    case Kind::Equal:
        return f;
    case Kind::Not:
        return Formula::negation(reassociate(f.child()));
    case Kind::Forall:
    case Kind::Exists:
        return Formula::quantified(f.quantifier(), f.bound(), reassociate(f.child()));
    default: {
        Formula l = reassociate(f.left());
        Formula r = reassociate(f.right());
        if (f.kind() != Kind::And) return Formula::binary(f.kind(), l, r);
        // Fold the right chain r1 ∧ (r2 ∧ ...) onto l.
        std::vector<Formula> rest;
        Formula cur = r;
        while (cur.kind() == Kind::And) {
            rest.push_back(cur.right());
            Formula next = cur.left();
            cur = next;
        }
        rest.push_back(cur);
        Formula acc = l;
        for (auto it = rest.rbegin(); it != rest.rend(); ++it) acc = Formula::conjunction(acc, *it);
        return acc;
    }
    }
}

Formula flip_equality(const Formula& f, const Variable& lhs, const Variable& rhs) {
    switch (f.kind()) {
    case Kind::Member:
        return f;
    case Kind::Equal:
        if (f.lhs() == lhs && f.rhs() == rhs) return Formula::equal(rhs, lhs);
        return f;
    case Kind::Not:
        return Formula::negation(flip_equality(f.child(), lhs, rhs));
    case Kind::Forall:
    case Kind::Exists:
        return Formula::quantified(f.quantifier(), f.bound(), flip_equality(f.child(), lhs, rhs));
    default:
        return Formula::binary(f.kind(), flip_equality(f.left(), lhs, rhs), flip_equality(f.right(), lhs, rhs));
    }
}

Formula merge_guarded_disjunction(const Formula& f) {
    if (f.kind() != Kind::Or) throw FormulaError("merge_guarded_disjunction: not a disjunction");
    Prefix l = split_prefix(f.left());
    Prefix r = split_prefix(f.right());
    if (l.binders.empty() || l.binders != r.binders) {
        throw FormulaError("merge_guarded_disjunction: the disjuncts do not share one quantifier prefix");
    }
    if (l.binders.front().first != Quantifier::Exists) {
        throw FormulaError("merge_guarded_disjunction: the shared prefix must start with ∃");
    }
    if (l.matrix.kind() != Kind::And || r.matrix.kind() != Kind::And) {
        throw FormulaError("merge_guarded_disjunction: each matrix must be a guarded conjunction");
    }
    const Formula& g1 = l.matrix.left();
    const Formula& g2 = r.matrix.left();
    bool complementary = (g2.kind() == Kind::Not && g2.child() == g1) || (g1.kind() == Kind::Not && g1.child() == g2);
    if (!complementary) throw FormulaError("merge_guarded_disjunction: the guards are not complementary");
    std::set<Variable> guard_vars = free_vars(g1);
    for (std::size_t i = 1; i < l.binders.size(); ++i) {
        if (guard_vars.contains(l.binders[i].second)) {
            throw FormulaError("merge_guarded_disjunction: the guard mentions the inner variable " +
                               l.binders[i].second.name());
        }
    }
    return wrap_prefix(l.binders, Formula::disjunction(l.matrix, r.matrix));
}

namespace {

void local_step(Trace& t, const Path& at, Rule rule, const Formula& replacement, std::string why) {
    Formula before = t.end();
    Formula after = replace_at(before, at, replacement);
    t.append({rule, std::move(before), std::move(after), at, std::move(why)});
}

}  // namespace

void unfold_implication_at(Trace& t, const Path& at) {
    const Formula& sub = subformula_at(t.end(), at);
    if (sub.kind() != Kind::Implies) throw FormulaError("unfold_implication: no implication at " + to_string(at));
    local_step(t, at, Rule::UnfoldImplication, Formula::disjunction(Formula::negation(sub.left()), sub.right()),
               "p → q ⇔ ¬p ∨ q");
}

void push_negation_at(Trace& t, const Path& at) {
    t.append_at(push_negation_trace(subformula_at(t.end(), at)), at);
}

void reassociate_at(Trace& t, const Path& at) {
    const Formula sub = subformula_at(t.end(), at);
    Formula g = reassociate(sub);
    if (!(g == sub)) local_step(t, at, Rule::Reassociate, g, "p ∧ (q ∧ r) ⇔ (p ∧ q) ∧ r");
}

void hoist_at(Trace& t, const Path& at) { t.append_at(hoist(subformula_at(t.end(), at)), at); }

void rename_at(Trace& t, const Path& at, const std::map<Variable, Variable>& map) {
    const Formula sub = subformula_at(t.end(), at);
    std::string why = "simultaneous renaming";
    for (const auto& [from, to] : map) why += " " + from.name() + "↦" + to.name();
    local_step(t, at, Rule::Rename, rename(sub, map), why);
}

void flip_equality_at(Trace& t, const Path& at, const Variable& lhs, const Variable& rhs) {
    const Formula sub = subformula_at(t.end(), at);
    Formula g = flip_equality(sub, lhs, rhs);
    if (!(g == sub)) {
        local_step(t, at, Rule::FlipEquality, g, "symmetry of =: " + lhs.name() + " = " + rhs.name() + " ⇔ " +
                                                     rhs.name() + " = " + lhs.name());
    }
}

void add_vacuous_at(Trace& t, const Path& at, const Variable& v, Quantifier q) {
    const Formula sub = subformula_at(t.end(), at);
    local_step(t, at, Rule::AddVacuous, add_vacuous(sub, v, q),
               "vacuous " + symbol(q) + v.name() + ": " + v.name() + " does not occur free in the matrix");
}

void merge_guarded_disjunction_at(Trace& t, const Path& at) {
    const Formula sub = subformula_at(t.end(), at);
    Formula merged = merge_guarded_disjunction(sub);
    local_step(t, at, Rule::MergeGuardedDisjunction, merged,
               "guards " + print(split_prefix(sub.left()).matrix.left(), PrintStyle::Unicode) + " and " +
                   print(split_prefix(sub.right()).matrix.left(), PrintStyle::Unicode) +
                   " exclude each other and only mention outer variables");
}

void apply_choice_schema_at(Trace& t, const Path& at, const SchemaInstance& schema) {
    const Formula sub = subformula_at(t.end(), at);
    if (!(sub == schema.a)) throw FormulaError("choice_schema: subformula at " + to_string(at) + " is not the A reading");
    CheckOptions options;
    options.close_free = true;
    if (!is_valid(check_valid(schema.premise, 3, options))) {
        throw FormulaError("choice_schema: the premise " + print(schema.premise, PrintStyle::Unicode) + " fails");
    }
    local_step(t, at, Rule::ChoiceSchema, schema.b,
               "A ⇔ B under the premise " + print(schema.premise, PrintStyle::Unicode) + " (no counterexample up to size 3)");
}

std::optional<Path> find_subformula(const Formula& f, const Formula& target) {
    if (f == target) return Path{};
    if (is_atom(f.kind())) return std::nullopt;
    if (is_binary(f.kind())) {
        for (std::uint8_t side : {std::uint8_t{0}, std::uint8_t{1}}) {
            if (auto p = find_subformula(side == 0 ? f.left() : f.right(), target)) {
                p->insert(p->begin(), side);
                return p;
            }
        }
        return std::nullopt;
    }
    if (auto p = find_subformula(f.child(), target)) {
        p->insert(p->begin(), 0);
        return p;
    }
    return std::nullopt;
}

Trace prenex(const Formula& f) {
    Trace t = push_negation_trace(f);
    t.append_at(hoist(t.end()), {});
    return t;
}

TraceVerdict verify_trace(const Trace& t, std::size_t nmax, const CheckOptions& options) {
    const auto& steps = t.steps();
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const Formula& expected = i == 0 ? t.start() : steps[i - 1].after;
        if (!(steps[i].before == expected)) {
            throw TraceError("broken trace: step " + std::to_string(i) + " does not start where the previous one ended");
        }
    }
    for (std::size_t i = 0; i < steps.size(); ++i) {
        Verdict v = check_equiv(steps[i].before, steps[i].after, nmax, options);
        if (!is_valid(v)) return {std::move(v), i};
    }
    return {ValidUpTo{nmax}, std::nullopt};
}

Trace rewrite_to_five_quantifiers(const Formula& sentence, const std::optional<SchemaInstance>& schema) {
    auto shape_error = [] {
        return FormulaError("expected a sentence of the shape ∀x(H → ∃y(y ∉ x ∧ C))");
    };
    if (sentence.kind() != Kind::Forall || sentence.child().kind() != Kind::Implies) throw shape_error();
    const Formula& conclusion = sentence.child().right();
    if (conclusion.kind() != Kind::Exists || conclusion.child().kind() != Kind::And) throw shape_error();

    const Path body{0};
    const Path hyp{0, 0};
    const Path goal{0, 1};

    Trace t{sentence};
    unfold_implication_at(t, body);

    if (schema) {
        auto inner = find_subformula(subformula_at(t.end(), goal), schema->a);
        if (!inner) throw FormulaError("rewrite: the A reading of the schema does not occur in the conclusion");
        Path at = goal;
        at.insert(at.end(), inner->begin(), inner->end());
        apply_choice_schema_at(t, at, *schema);
    }
    hoist_at(t, goal);

    push_negation_at(t, hyp);
    reassociate_at(t, hyp);
    hoist_at(t, hyp);

    Prefix left = split_prefix(subformula_at(t.end(), hyp));
    Prefix right = split_prefix(subformula_at(t.end(), goal));
    if (left.binders.size() > right.binders.size()) {
        throw FormulaError("rewrite: the hypothesis side has a longer prefix than the conclusion side");
    }
    std::map<Variable, Variable> align;
    for (std::size_t i = 0; i < left.binders.size(); ++i) {
        if (left.binders[i].first != right.binders[i].first) {
            throw FormulaError("rewrite: the two prefixes alternate differently");
        }
        align.emplace(left.binders[i].second, right.binders[i].second);
    }
    rename_at(t, hyp, align);

    // The guard variable goes on the right of each equation.
    const Variable& guard = right.binders.front().second;
    std::vector<Variable> partners;
    std::vector<const Formula*> stack{&subformula_at(t.end(), hyp)};
    while (!stack.empty()) {
        const Formula* g = stack.back();
        stack.pop_back();
        if (g->kind() == Kind::Equal) {
            if (g->lhs() == guard && g->rhs() != guard) partners.push_back(g->rhs());
        } else if (is_binary(g->kind())) {
            stack.push_back(&g->left());
            stack.push_back(&g->right());
        } else if (!is_atom(g->kind())) {
            stack.push_back(&g->child());
        }
    }
    for (const auto& p : std::set<Variable>(partners.begin(), partners.end())) flip_equality_at(t, hyp, guard, p);

    for (std::size_t i = left.binders.size(); i < right.binders.size(); ++i) {
        add_vacuous_at(t, hyp, right.binders[i].second, right.binders[i].first);
    }
    merge_guarded_disjunction_at(t, body);
    return t;
}

}  // namespace qc
