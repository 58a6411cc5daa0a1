#include "qc/formula.hpp"

#include <algorithm>
#include <functional>

namespace qc {

Variable::Variable(std::string name) : name_(std::move(name)) {
    if (name_.empty()) {
        throw FormulaError("variable name must be nonempty");
    }
}

bool is_atom(Kind k) noexcept { return k == Kind::Member || k == Kind::Equal; }

bool is_binary(Kind k) noexcept {
    return k == Kind::And || k == Kind::Or || k == Kind::Implies || k == Kind::Iff;
}

bool is_quantifier(Kind k) noexcept { return k == Kind::Forall || k == Kind::Exists; }

std::string to_string(const Path& path) {
    std::string out = "/";
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out += '/';
        out += std::to_string(path[i]);
    }
    return out;
}

Formula Formula::member(Variable lhs, Variable rhs) {
    return Formula{std::make_shared<const Node>(Node{Kind::Member, std::move(lhs), std::move(rhs), {}, {}})};
}

Formula Formula::equal(Variable lhs, Variable rhs) {
    return Formula{std::make_shared<const Node>(Node{Kind::Equal, std::move(lhs), std::move(rhs), {}, {}})};
}

Formula Formula::negation(Formula f) {
    return Formula{std::make_shared<const Node>(Node{Kind::Not, {}, {}, std::move(f), {}})};
}

Formula Formula::binary(Kind k, Formula l, Formula r) {
    if (!is_binary(k)) {
        throw FormulaError("not a binary connective");
    }
    return Formula{std::make_shared<const Node>(Node{k, {}, {}, std::move(l), std::move(r)})};
}

Formula Formula::conjunction(Formula l, Formula r) { return binary(Kind::And, std::move(l), std::move(r)); }
Formula Formula::disjunction(Formula l, Formula r) { return binary(Kind::Or, std::move(l), std::move(r)); }
Formula Formula::implication(Formula l, Formula r) { return binary(Kind::Implies, std::move(l), std::move(r)); }
Formula Formula::biconditional(Formula l, Formula r) { return binary(Kind::Iff, std::move(l), std::move(r)); }

Formula Formula::quantified(Quantifier q, Variable v, Formula body) {
    Kind k = q == Quantifier::Forall ? Kind::Forall : Kind::Exists;
    return Formula{std::make_shared<const Node>(Node{k, std::move(v), {}, std::move(body), {}})};
}

Formula Formula::forall(Variable v, Formula body) { return quantified(Quantifier::Forall, std::move(v), std::move(body)); }
Formula Formula::exists(Variable v, Formula body) { return quantified(Quantifier::Exists, std::move(v), std::move(body)); }

Kind Formula::kind() const noexcept { return node_->kind; }

const Variable& Formula::lhs() const {
    if (!is_atom(kind())) throw FormulaError("lhs() on a non-atomic formula");
    return *node_->a;
}

const Variable& Formula::rhs() const {
    if (!is_atom(kind())) throw FormulaError("rhs() on a non-atomic formula");
    return *node_->b;
}

const Variable& Formula::bound() const {
    if (!is_quantifier(kind())) throw FormulaError("bound() on a non-quantified formula");
    return *node_->a;
}

const Formula& Formula::child() const {
    if (kind() != Kind::Not && !is_quantifier(kind())) throw FormulaError("child() on a formula without a single operand");
    return *node_->l;
}

const Formula& Formula::left() const {
    if (!is_binary(kind())) throw FormulaError("left() on a non-binary formula");
    return *node_->l;
}

const Formula& Formula::right() const {
    if (!is_binary(kind())) throw FormulaError("right() on a non-binary formula");
    return *node_->r;
}

Quantifier Formula::quantifier() const {
    if (!is_quantifier(kind())) throw FormulaError("quantifier() on a non-quantified formula");
    return kind() == Kind::Forall ? Quantifier::Forall : Quantifier::Exists;
}

bool Formula::operator==(const Formula& other) const {
    if (node_ == other.node_) return true;
    const Node& x = *node_;
    const Node& y = *other.node_;
    if (x.kind != y.kind || x.a != y.a || x.b != y.b) return false;
    if (x.l.has_value() != y.l.has_value() || x.r.has_value() != y.r.has_value()) return false;
    if (x.l && !(*x.l == *y.l)) return false;
    if (x.r && !(*x.r == *y.r)) return false;
    return true;
}

Formula not_equal(Variable lhs, Variable rhs) { return Formula::negation(Formula::equal(std::move(lhs), std::move(rhs))); }
Formula not_member(Variable lhs, Variable rhs) { return Formula::negation(Formula::member(std::move(lhs), std::move(rhs))); }

Formula forall_in(Variable v, Variable bound, Formula body) {
    Formula guard = Formula::member(v, std::move(bound));
    return Formula::forall(std::move(v), Formula::implication(std::move(guard), std::move(body)));
}

Formula exists_in(Variable v, Variable bound, Formula body) {
    Formula guard = Formula::member(v, std::move(bound));
    return Formula::exists(std::move(v), Formula::conjunction(std::move(guard), std::move(body)));
}

namespace {

void collect_free(const Formula& f, std::vector<Variable>& bound, std::set<Variable>& out) {
    auto is_bound = [&](const Variable& v) { return std::find(bound.begin(), bound.end(), v) != bound.end(); };
    switch (f.kind()) {
    case Kind::Member:
    case Kind::Equal:
        if (!is_bound(f.lhs())) out.insert(f.lhs());
        if (!is_bound(f.rhs())) out.insert(f.rhs());
        return;
    case Kind::Not:
        collect_free(f.child(), bound, out);
        return;
    case Kind::Forall:
    case Kind::Exists:
        bound.push_back(f.bound());
        collect_free(f.child(), bound, out);
        bound.pop_back();
        return;
    default:
        collect_free(f.left(), bound, out);
        collect_free(f.right(), bound, out);
    }
}

template <typename Visit>
void walk(const Formula& f, Visit&& visit) {
    visit(f);
    switch (f.kind()) {
    case Kind::Member:
    case Kind::Equal:
        return;
    case Kind::Not:
    case Kind::Forall:
    case Kind::Exists:
        walk(f.child(), visit);
        return;
    default:
        walk(f.left(), visit);
        walk(f.right(), visit);
    }
}

}  // namespace

std::set<Variable> free_vars(const Formula& f) {
    std::set<Variable> out;
    std::vector<Variable> bound;
    collect_free(f, bound, out);
    return out;
}

std::set<Variable> all_vars(const Formula& f) {
    std::set<Variable> out;
    walk(f, [&](const Formula& g) {
        if (is_atom(g.kind())) {
            out.insert(g.lhs());
            out.insert(g.rhs());
        } else if (is_quantifier(g.kind())) {
            out.insert(g.bound());
        }
    });
    return out;
}

bool occurs_free(const Formula& f, const Variable& v) { return free_vars(f).contains(v); }

std::size_t quantifier_count(const Formula& f) {
    std::size_t n = 0;
    walk(f, [&](const Formula& g) { n += is_quantifier(g.kind()) ? 1 : 0; });
    return n;
}

std::size_t atom_count(const Formula& f) {
    std::size_t n = 0;
    walk(f, [&](const Formula& g) { n += is_atom(g.kind()) ? 1 : 0; });
    return n;
}

std::size_t node_count(const Formula& f) {
    std::size_t n = 0;
    walk(f, [&](const Formula&) { ++n; });
    return n;
}

Variable fresh_variable(const Variable& base, const std::set<Variable>& taken) {
    std::string name = base.name();
    do {
        name += '\'';
    } while (taken.contains(Variable{name}));
    return Variable{name};
}

namespace {

using VarMap = std::map<Variable, Variable>;

const Variable& image(const VarMap& m, const Variable& v) {
    auto it = m.find(v);
    return it == m.end() ? v : it->second;
}

Formula relabel(const Formula& f, const VarMap& m) {
    switch (f.kind()) {
    case Kind::Member:
        return Formula::member(image(m, f.lhs()), image(m, f.rhs()));
    case Kind::Equal:
        return Formula::equal(image(m, f.lhs()), image(m, f.rhs()));
    case Kind::Not:
        return Formula::negation(relabel(f.child(), m));
    case Kind::Forall:
    case Kind::Exists:
        return Formula::quantified(f.quantifier(), image(m, f.bound()), relabel(f.child(), m));
    default:
        return Formula::binary(f.kind(), relabel(f.left(), m), relabel(f.right(), m));
    }
}

Formula substitute(const Formula& f, const VarMap& m, const std::set<Variable>& avoid) {
    switch (f.kind()) {
    case Kind::Member:
    case Kind::Equal:
    case Kind::Not:
        if (f.kind() == Kind::Not) return Formula::negation(substitute(f.child(), m, avoid));
        return relabel(f, m);
    case Kind::Forall:
    case Kind::Exists: {
        VarMap inner = m;
        inner.erase(f.bound());
        const Formula& body = f.child();
        std::set<Variable> body_free = free_vars(body);
        bool captures = std::any_of(body_free.begin(), body_free.end(), [&](const Variable& w) {
            auto it = inner.find(w);
            return it != inner.end() && it->second == f.bound();
        });
        if (!captures) {
            return Formula::quantified(f.quantifier(), f.bound(), substitute(body, inner, avoid));
        }
        std::set<Variable> taken = avoid;
        for (const auto& v : all_vars(body)) taken.insert(v);
        for (const auto& [from, to] : inner) taken.insert(to);
        Variable renamed = fresh_variable(f.bound(), taken);
        inner.insert_or_assign(f.bound(), renamed);
        return Formula::quantified(f.quantifier(), renamed, substitute(body, inner, avoid));
    }
    default:
        return Formula::binary(f.kind(), substitute(f.left(), m, avoid), substitute(f.right(), m, avoid));
    }
}

bool injective_on(const VarMap& m, const std::set<Variable>& domain) {
    std::set<Variable> images;
    for (const auto& v : domain) {
        if (!images.insert(image(m, v)).second) return false;
    }
    return true;
}

}  // namespace

Formula rename(const Formula& f, const std::map<Variable, Variable>& map) {
    if (injective_on(map, all_vars(f))) {
        return relabel(f, map);
    }
    std::set<Variable> free = free_vars(f);
    if (!injective_on(map, free)) {
        throw FormulaError("rename: map is not injective on the free variables");
    }
    VarMap restricted;
    for (const auto& [from, to] : map) {
        if (free.contains(from)) restricted.emplace(from, to);
    }
    std::set<Variable> avoid = all_vars(f);
    for (const auto& [from, to] : restricted) avoid.insert(to);
    return substitute(f, restricted, avoid);
}

namespace {

bool bounded_node(const Formula& f) {
    const Formula& body = f.child();
    Kind connective = f.kind() == Kind::Forall ? Kind::Implies : Kind::And;
    if (body.kind() != connective) return false;
    const Formula& guard = body.left();
    return guard.kind() == Kind::Member && guard.lhs() == f.bound() && guard.rhs() != f.bound();
}

}  // namespace

bool is_bounded(const Formula& f) {
    bool ok = true;
    walk(f, [&](const Formula& g) {
        if (is_quantifier(g.kind()) && !bounded_node(g)) ok = false;
    });
    return ok;
}

Prefix split_prefix(const Formula& f) {
    Prefix p{{}, f};
    while (is_quantifier(p.matrix.kind())) {
        p.binders.emplace_back(p.matrix.quantifier(), p.matrix.bound());
        Formula next = p.matrix.child();
        p.matrix = std::move(next);
    }
    return p;
}

Formula wrap_prefix(const std::vector<std::pair<Quantifier, Variable>>& binders, Formula matrix) {
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
        matrix = Formula::quantified(it->first, it->second, std::move(matrix));
    }
    return matrix;
}

namespace {

std::optional<Path> first_quantifier(const Formula& f, Path& at) {
    if (is_quantifier(f.kind())) return at;
    if (is_atom(f.kind())) return std::nullopt;
    if (f.kind() == Kind::Not) {
        at.push_back(0);
        auto found = first_quantifier(f.child(), at);
        at.pop_back();
        return found;
    }
    for (std::uint8_t side : {std::uint8_t{0}, std::uint8_t{1}}) {
        at.push_back(side);
        auto found = first_quantifier(side == 0 ? f.left() : f.right(), at);
        at.pop_back();
        if (found) return found;
    }
    return std::nullopt;
}

}  // namespace

bool is_prenex(const Formula& f) {
    Path at;
    return !first_quantifier(split_prefix(f).matrix, at).has_value();
}

std::string prefix_pattern(const Formula& f) {
    Prefix p = split_prefix(f);
    Path at(p.binders.size(), 0);
    if (auto inner = first_quantifier(p.matrix, at)) {
        throw NotPrenexError(*inner, "formula is not prenex: quantifier inside the matrix at " + to_string(*inner));
    }
    std::string out;
    for (const auto& [q, v] : p.binders) {
        out += q == Quantifier::Forall ? "∀" : "∃";
    }
    return out;
}

const Formula& subformula_at(const Formula& f, const Path& path) {
    const Formula* cur = &f;
    for (std::uint8_t step : path) {
        if (is_atom(cur->kind())) throw FormulaError("path " + to_string(path) + " runs past an atom");
        if (is_binary(cur->kind())) {
            cur = step == 0 ? &cur->left() : &cur->right();
        } else {
            if (step != 0) throw FormulaError("path " + to_string(path) + " selects a missing right operand");
            cur = &cur->child();
        }
    }
    return *cur;
}

namespace {

Formula replace_from(const Formula& f, const Path& path, std::size_t depth, Formula replacement) {
    if (depth == path.size()) return replacement;
    std::uint8_t step = path[depth];
    if (is_atom(f.kind())) throw FormulaError("path " + to_string(path) + " runs past an atom");
    if (is_binary(f.kind())) {
        if (step == 0) return Formula::binary(f.kind(), replace_from(f.left(), path, depth + 1, std::move(replacement)), f.right());
        return Formula::binary(f.kind(), f.left(), replace_from(f.right(), path, depth + 1, std::move(replacement)));
    }
    if (step != 0) throw FormulaError("path " + to_string(path) + " selects a missing right operand");
    Formula inner = replace_from(f.child(), path, depth + 1, std::move(replacement));
    if (f.kind() == Kind::Not) return Formula::negation(std::move(inner));
    return Formula::quantified(f.quantifier(), f.bound(), std::move(inner));
}

}  // namespace

Formula replace_at(const Formula& f, const Path& path, Formula replacement) {
    return replace_from(f, path, 0, std::move(replacement));
}

Formula SchemaSlot::instantiate(const std::vector<Variable>& args) const {
    if (args.size() != params.size()) {
        throw FormulaError("schema slot " + name + " expects " + std::to_string(params.size()) + " argument(s)");
    }
    VarMap m;
    for (std::size_t i = 0; i < params.size(); ++i) m.emplace(params[i], args[i]);
    std::set<Variable> avoid = all_vars(body);
    for (const auto& v : args) avoid.insert(v);
    // Only the parameters are substituted; everything else stays put.
    return substitute(body, m, avoid);
}

Formula SchemaInstance::statement() const {
    return Formula::implication(premise, Formula::biconditional(a, b));
}

SchemaInstance build_choice_schema(const SchemaSlot& x, const SchemaSlot& y, const SchemaSlot& z) {
    const Variable va = var("a");
    const Variable vb = var("b");
    auto check = [&](const SchemaSlot& s, std::size_t arity) {
        if (s.params.size() != arity) {
            throw FormulaError("schema slot " + s.name + " must have arity " + std::to_string(arity));
        }
        std::set<Variable> free = free_vars(s.body);
        for (const auto& p : s.params) free.erase(p);
        if (free.contains(va) || free.contains(vb)) {
            throw FormulaError("schema slot " + s.name + " mentions a or b freely");
        }
    };
    check(x, 1);
    check(y, 1);
    check(z, 2);

    std::set<Variable> taken{va, vb};
    for (const SchemaSlot* s : {&x, &y, &z}) {
        std::set<Variable> free = free_vars(s->body);
        for (const auto& p : s->params) free.erase(p);
        taken.insert(free.begin(), free.end());
    }
    Variable t = var("t");
    if (taken.contains(t)) t = fresh_variable(t, taken);

    Formula premise = Formula::forall(t, Formula::implication(y.instantiate({t}), x.instantiate({t})));
    Formula a = Formula::implication(
        Formula::exists(vb, x.instantiate({vb})),
        Formula::exists(va, Formula::conjunction(y.instantiate({va}), Formula::forall(vb, z.instantiate({vb, va})))));
    Formula b = Formula::exists(
        va, Formula::forall(vb, Formula::conjunction(Formula::implication(x.instantiate({vb}), y.instantiate({va})),
                                                     Formula::implication(y.instantiate({va}), z.instantiate({vb, va})))));
    return SchemaInstance{std::move(premise), std::move(a), std::move(b)};
}

}  // namespace qc
