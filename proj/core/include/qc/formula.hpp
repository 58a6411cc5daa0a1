#pragma once

// Immutable syntax trees for first-order formulas over the signature {∈, =}.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qc {

class Variable {
public:
    explicit Variable(std::string name);

    const std::string& name() const noexcept { return name_; }

    auto operator<=>(const Variable&) const = default;
    bool operator==(const Variable&) const = default;

private:
    std::string name_;
};

inline Variable var(std::string_view name) { return Variable{std::string{name}}; }

enum class Kind : std::uint8_t { Member, Equal, Not, And, Or, Implies, Iff, Forall, Exists };

enum class Quantifier : std::uint8_t { Forall, Exists };

bool is_atom(Kind k) noexcept;
bool is_binary(Kind k) noexcept;
bool is_quantifier(Kind k) noexcept;

class FormulaError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A child position inside a formula: 0 selects the left/only child, 1 the right child.
using Path = std::vector<std::uint8_t>;

std::string to_string(const Path& path);

class Formula {
public:
    static Formula member(Variable lhs, Variable rhs);
    static Formula equal(Variable lhs, Variable rhs);
    static Formula negation(Formula f);
    static Formula conjunction(Formula l, Formula r);
    static Formula disjunction(Formula l, Formula r);
    static Formula implication(Formula l, Formula r);
    static Formula biconditional(Formula l, Formula r);
    static Formula forall(Variable v, Formula body);
    static Formula exists(Variable v, Formula body);
    static Formula binary(Kind k, Formula l, Formula r);
    static Formula quantified(Quantifier q, Variable v, Formula body);

    Kind kind() const noexcept;

    // Atom operands.
    const Variable& lhs() const;
    const Variable& rhs() const;
    // Binder of a quantifier node.
    const Variable& bound() const;
    // Operand of negation or body of a quantifier.
    const Formula& child() const;
    const Formula& left() const;
    const Formula& right() const;

    Quantifier quantifier() const;

    // Structural equality; shared subtrees compare in O(1).
    bool operator==(const Formula& other) const;

    const void* identity() const noexcept { return node_.get(); }

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct Formula::Node {
    Kind kind;
    // Atom operands, or the binder in slot `a` for quantifiers.
    std::optional<Variable> a;
    std::optional<Variable> b;
    std::optional<Formula> l;
    std::optional<Formula> r;
};

// Sugar: u ≠ v is ¬(u = v) and u ∉ v is ¬(u ∈ v).
Formula not_equal(Variable lhs, Variable rhs);
Formula not_member(Variable lhs, Variable rhs);

// Bounded quantifiers ∀v∈t φ ≡ ∀v(v∈t → φ) and ∃v∈t φ ≡ ∃v(v∈t ∧ φ).
Formula forall_in(Variable v, Variable bound, Formula body);
Formula exists_in(Variable v, Variable bound, Formula body);

std::set<Variable> free_vars(const Formula& f);
std::set<Variable> all_vars(const Formula& f);
bool occurs_free(const Formula& f, const Variable& v);

std::size_t quantifier_count(const Formula& f);
std::size_t atom_count(const Formula& f);
std::size_t node_count(const Formula& f);

// Simultaneous renaming. When the map, extended by the identity, is injective on
// every variable of `f`, all occurrences (binders included) are relabelled.
// Otherwise only free occurrences are substituted, and binders that would
// capture an image are renamed to fresh names. Throws FormulaError when the map
// is not injective on free_vars(f).
Formula rename(const Formula& f, const std::map<Variable, Variable>& map);

// A name not in `taken`, derived from `base` by appending primes.
Variable fresh_variable(const Variable& base, const std::set<Variable>& taken);

bool is_bounded(const Formula& f);

bool is_prenex(const Formula& f);

class NotPrenexError : public FormulaError {
public:
    NotPrenexError(Path where, const std::string& what)
        : FormulaError(what), position(std::move(where)) {}
    Path position;
};

// Binder kinds of the leading prefix, e.g. "∀∃∀". Throws NotPrenexError with the
// path of the first quantifier found inside the matrix.
std::string prefix_pattern(const Formula& f);

// Splits a formula into its leading quantifier prefix and the remaining matrix.
struct Prefix {
    std::vector<std::pair<Quantifier, Variable>> binders;
    Formula matrix;
};
Prefix split_prefix(const Formula& f);
Formula wrap_prefix(const std::vector<std::pair<Quantifier, Variable>>& binders, Formula matrix);

const Formula& subformula_at(const Formula& f, const Path& path);
Formula replace_at(const Formula& f, const Path& path, Formula replacement);

// One of the schematic letters X(t), Y(t), Z(r,t) of the two-quantifier choice schema.
struct SchemaSlot {
    std::string name;
    std::vector<Variable> params;
    Formula body;

    // Substitutes the arguments for the parameters, avoiding capture.
    Formula instantiate(const std::vector<Variable>& args) const;
};

struct SchemaInstance {
    Formula premise;  // ∀t(Y(t) → X(t))
    Formula a;        // ∃b X(b) → ∃a(Y(a) ∧ ∀b Z(b,a))
    Formula b;        // ∃a ∀b[(X(b) → Y(a)) ∧ (Y(a) → Z(b,a))]

    // premise → (A ↔ B)
    Formula statement() const;
};

// Builds the two equivalent readings A and B from the three slots. Slot arities
// must be X:1, Y:1, Z:2 and the variables a, b must not be free in any slot.
SchemaInstance build_choice_schema(const SchemaSlot& x, const SchemaSlot& y, const SchemaSlot& z);

}  // namespace qc
