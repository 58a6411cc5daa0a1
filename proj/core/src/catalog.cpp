#include "qc/catalog.hpp"

#include <tuple>
#include <utility>

namespace qc {

namespace {

Formula in(std::string_view a, std::string_view b) { return Formula::member(var(a), var(b)); }
Formula nin(std::string_view a, std::string_view b) { return not_member(var(a), var(b)); }
Formula eq(std::string_view a, std::string_view b) { return Formula::equal(var(a), var(b)); }
Formula neq(std::string_view a, std::string_view b) { return not_equal(var(a), var(b)); }
Formula neg(Formula f) { return Formula::negation(std::move(f)); }
Formula conj(Formula l, Formula r) { return Formula::conjunction(std::move(l), std::move(r)); }
Formula disj(Formula l, Formula r) { return Formula::disjunction(std::move(l), std::move(r)); }
Formula imp(Formula l, Formula r) { return Formula::implication(std::move(l), std::move(r)); }
Formula all(std::string_view v, Formula body) { return Formula::forall(var(v), std::move(body)); }
Formula ex(std::string_view v, Formula body) { return Formula::exists(var(v), std::move(body)); }
Formula all_in(std::string_view v, std::string_view t, Formula body) { return forall_in(var(v), var(t), std::move(body)); }
Formula ex_in(std::string_view v, std::string_view t, Formula body) { return exists_in(var(v), var(t), std::move(body)); }

Formula prefix5(Formula matrix) {
    return all("x", ex("y", all("z", ex("a", all("b", std::move(matrix))))));
}

std::vector<Variable> vars(std::initializer_list<std::string_view> names) {
    std::vector<Variable> out;
    for (auto n : names) out.push_back(var(n));
    return out;
}

// Renderings of the shared pieces, spliced into the larger displays.
constexpr std::string_view kChoiceA = "∃b b ∈ z → ∃a (a ∈ z ∧ a ∈ y ∧ ∀b (b ∈ z ∧ b ∈ y → b = a))";
constexpr std::string_view kChoiceB = "∃a ∀b [(b ∈ z → a ∈ z ∧ a ∈ y) ∧ (a ∈ z ∧ a ∈ y → (b ∈ z ∧ b ∈ y → b = a))]";
constexpr std::string_view kA = "z ∈ y → a ∈ x ∧ a ≠ y ∧ z ∈ a";
constexpr std::string_view kB = "z ∈ x → (b ∈ z → a ∈ z ∧ a ∈ y) ∧ (a ∈ z ∧ a ∈ y → (b ∈ z ∧ b ∈ y → b = a))";
constexpr std::string_view kBDropped = "z ∈ x → (b ∈ z → a ∈ z ∧ a ∈ y)";
constexpr std::string_view kBBar = "z ∈ x → a ∈ z ∧ a ∈ y ∧ (b ∈ z ∧ b ∈ y → b = a)";
constexpr std::string_view kACh1 = "∀z ∈ x ∃a a ∈ z";
constexpr std::string_view kACh2 = "∀z ∈ x ∀z' ∈ x (z ≠ z' → ∀a (a ∈ z → a ∉ z'))";
constexpr std::string_view kAChStar = "∀z ∈ x ∃a ∈ z ∀z' ∈ x (z ≠ z' → a ∉ z')";
constexpr std::string_view kAChStarUnfolded = "∀z [z ∈ x → ∃a (a ∈ z ∧ ∀z' [z' ∈ x → (z ≠ z' → a ∉ z')])]";

std::string cat(std::initializer_list<std::string_view> parts) {
    std::string out;
    for (auto p : parts) out += p;
    return out;
}

}  // namespace

void Catalog::add(CatalogEntry entry) {
    std::string key = entry.name;
    if (index_.contains(key)) throw std::logic_error("duplicate catalog entry " + key);
    index_.emplace(std::move(key), entries_.size());
    entries_.push_back(std::move(entry));
}

Catalog::Catalog(CatalogFaults faults) {
    // Choice-sets.
    Formula unique_a = ex("a", conj(conj(in("a", "z"), in("a", "y")), all("b", imp(conj(in("b", "z"), in("b", "y")), eq("b", "a")))));
    Formula choice_a = imp(ex("b", in("b", "z")), unique_a);
    Formula choice_b = ex("a", all("b", conj(imp(in("b", "z"), conj(in("a", "z"), in("a", "y"))),
                                             imp(conj(in("a", "z"), in("a", "y")),
                                                 imp(conj(in("b", "z"), in("b", "y")), eq("b", "a"))))));
    Formula c = all_in("z", "x", choice_a);
    Formula c_unique = all_in("z", "x", imp(ex("b", in("b", "z")),
                                            ex_in("a", "y", conj(in("a", "z"), all_in("b", "y", imp(in("b", "z"), eq("b", "a")))))));
    Formula c3 = all("z", imp(in("z", "x"), choice_b));

    const std::string c_text = cat({"∀z ∈ x (", kChoiceA, ")"});

    add({"C", c, c_text, vars({"x", "y"}), "y is a choice-set for x: every nonempty z in x meets y in exactly one element", ""});
    add({"C-unique", c_unique, "∀z ∈ x (∃b b ∈ z → ∃a ∈ y (a ∈ z ∧ ∀b ∈ y (b ∈ z → b = a)))", vars({"x", "y"}),
         "choice-set written with bounded unique existence, z ≠ ∅ → ∃!a ∈ y a ∈ z, expanded", ""});
    add({"choice-A", choice_a, std::string{kChoiceA}, vars({"y", "z"}),
         "if z is nonempty then z ∩ y is a singleton (three quantifiers, not prenex)", ""});
    add({"choice-B", choice_b, std::string{kChoiceB}, vars({"y", "z"}),
         "two-quantifier reading of choice-A", ""});

    SchemaInstance schema = build_choice_schema(
        SchemaSlot{"X", vars({"t"}), in("t", "z")},
        SchemaSlot{"Y", vars({"t"}), conj(in("t", "z"), in("t", "y"))},
        SchemaSlot{"Z", vars({"r", "t"}), imp(conj(in("r", "z"), in("r", "y")), eq("r", "t"))});
    add({"choice-schema", schema.statement(),
         cat({"∀t (t ∈ z ∧ t ∈ y → t ∈ z) → (", kChoiceA, " ↔ ", kChoiceB, ")"}), vars({"y", "z"}),
         "the schema premise implies that choice-A and choice-B are equivalent", ""});
    schema_ = schema;
    add({"C3", c3, cat({"∀z (z ∈ x → ", kChoiceB, ")"}), vars({"x", "y"}),
         "choice-set stated with three quantifiers", ""});

    // The axiom of choice and its strengthening.
    Formula ach1 = all_in("z", "x", ex("a", in("a", "z")));
    Formula ach2 = all_in("z", "x", all_in("z'", "x", imp(neq("z", "z'"), all("a", imp(in("a", "z"), nin("a", "z'"))))));
    Formula ach_star = all_in("z", "x", ex_in("a", "z", all_in("z'", "x", imp(neq("z", "z'"), nin("a", "z'")))));
    Formula ac = all("x", imp(conj(ach1, ach2), ex("y", c)));
    Formula ac_star = all("x", imp(ach_star, ex("y", conj(nin("y", "x"), c))));

    const std::string ac_text = cat({"∀x [(", kACh1, ") ∧ (", kACh2, ") → ∃y ", c_text, "]"});
    const std::string ac_star_text = cat({"∀x (", kAChStar, " → ∃y (y ∉ x ∧ ", c_text, "))"});

    add({"AC_h1", ach1, std::string{kACh1}, vars({"x"}), "every element of x is nonempty", ""});
    add({"AC_h2", ach2, std::string{kACh2}, vars({"x"}), "distinct elements of x are disjoint", ""});
    add({"AC", ac, ac_text, {}, "every family of nonempty pairwise disjoint sets has a choice-set", ""});
    add({"AC_h*", ach_star, std::string{kAChStar}, vars({"x"}),
         "every element of x has an element lying in no other element of x", ""});
    add({"AC*", ac_star, ac_star_text, {},
         "every x satisfying AC_h* has a choice-set that is not an element of x", ""});
    add({"hyp-strengthening", all("x", imp(conj(ach1, ach2), ach_star)),
         cat({"∀x ((", kACh1, ") ∧ (", kACh2, ") → ", kAChStar, ")"}), {},
         "AC_h1 and AC_h2 together imply AC_h*", ""});
    add({"AC*->AC", imp(ac_star, ac), cat({"(", ac_star_text, ") → ", ac_text}), {},
         "AC* implies AC in pure first-order logic", ""});

    Formula excl = all_in("z*", "x", imp(neq("z", "z*"), nin("a", "z*")));
    Formula phi = conj(all_in("a", "z", imp(excl, in("a", "z_x"))), all_in("a", "z_x", conj(in("a", "z"), excl)));
    add({"phi", phi,
         "∀a ∈ z (∀z* ∈ x (z ≠ z* → a ∉ z*) → a ∈ z_x) ∧ ∀a ∈ z_x (a ∈ z ∧ ∀z* ∈ x (z ≠ z* → a ∉ z*))",
         vars({"x", "z", "z_x"}),
         "z_x is the set of elements of z lying in no other element of x, with bounded quantifiers only", ""});

    // The five-quantifier sentence.
    Formula a = imp(in("z", "y"), conj(conj(in("a", "x"), neq("a", "y")), in("z", "a")));
    Formula b_first = imp(in("b", "z"), conj(in("a", "z"), in("a", "y")));
    Formula b_second = imp(conj(in("a", "z"), in("a", "y")), imp(conj(in("b", "z"), in("b", "y")), eq("b", "a")));
    Formula b = imp(in("z", "x"), faults.drop_conjunct ? b_first : conj(b_first, b_second));
    const std::string_view b_text = faults.drop_conjunct ? kBDropped : kB;

    Formula matrix = disj(conj(in("y", "x"), a), conj(nin("y", "x"), b));
    Formula ac2 = faults.flip_quantifier ? all("x", ex("y", all("z", ex("a", ex("b", matrix))))) : prefix5(matrix);
    const std::string ac2_text = cat({faults.flip_quantifier ? "∀x∃y∀z∃a∃b" : "∀x∃y∀z∃a∀b", "[(y ∈ x ∧ (", kA,
                                      ")) ∨ (y ∉ x ∧ (", b_text, "))]"});

    add({"A", a, std::string{kA}, vars({"a", "x", "y", "z"}), "the disjunct used when y ∈ x", ""});
    add({"B", b, std::string{b_text}, vars({"a", "b", "x", "y", "z"}), "the disjunct used when y ∉ x", ""});
    add({"AC**", ac2, ac2_text, {}, "five-quantifier sentence equivalent to AC*", ""});
    add({"disjoint-guards", neg(conj(conj(in("y", "x"), a), conj(nin("y", "x"), b))),
         cat({"¬[(y ∈ x ∧ (", kA, ")) ∧ (y ∉ x ∧ (", b_text, "))]"}), vars({"a", "b", "x", "y", "z"}),
         "the two disjuncts of AC** exclude each other", ""});

    // Shorter variants.
    Formula c_bar = all_in("z", "x", unique_a);
    Formula b_bar = imp(in("z", "x"), conj(conj(in("a", "z"), in("a", "y")), imp(conj(in("b", "z"), in("b", "y")), eq("b", "a"))));
    const std::string c_bar_text = "∀z ∈ x ∃a (a ∈ z ∧ a ∈ y ∧ ∀b (b ∈ z ∧ b ∈ y → b = a))";
    add({"C-bar", c_bar, c_bar_text, vars({"x", "y"}), "every element of x meets y in exactly one element",
         "the display closes with one bracket too many; the balanced reading is stored"});
    add({"B-bar", b_bar, std::string{kBBar}, vars({"a", "b", "x", "y", "z"}), "shorter replacement for B", ""});
    add({"AC-bar*", all("x", imp(ach_star, ex("y", conj(nin("y", "x"), c_bar)))),
         cat({"∀x (", kAChStar, " → ∃y (y ∉ x ∧ ", c_bar_text, "))"}), {}, "AC* with C replaced by C-bar", ""});
    add({"AC-bar**", prefix5(disj(conj(in("y", "x"), a), conj(nin("y", "x"), b_bar))),
         cat({"∀x∃y∀z∃a∀b[(y ∈ x ∧ (", kA, ")) ∨ (y ∉ x ∧ (", kBBar, "))]"}), {},
         "AC** with B replaced by B-bar", ""});

    // Rewrite chains from AC* to AC**.
    Formula s1_0 = ex("y", conj(nin("y", "x"), c));
    Formula s1_1 = ex("y", conj(nin("y", "x"), c3));
    Formula s1_2 = ex("y", conj(nin("y", "x"), all("z", ex("a", all("b", b)))));
    Formula s1_3 = ex("y", all("z", ex("a", all("b", conj(nin("y", "x"), b)))));
    const std::vector<std::pair<Formula, std::string>> step1{
        {s1_0, cat({"∃y (y ∉ x ∧ ", c_text, ")"})},
        {s1_1, cat({"∃y (y ∉ x ∧ ∀z (z ∈ x → ", kChoiceB, "))"})},
        {s1_2, cat({"∃y (y ∉ x ∧ ∀z ∃a ∀b (", b_text, "))"})},
        {s1_3, cat({"∃y ∀z ∃a ∀b (y ∉ x ∧ (", b_text, "))"})},
    };

    Formula witness = conj(conj(in("z'", "x"), neq("z", "z'")), in("a", "z'"));
    Formula s2_0 = neg(ach_star);
    Formula s2_1 = ex("z", conj(in("z", "x"), all("a", imp(in("a", "z"), ex("z'", witness)))));
    Formula s2_2 = ex("z", conj(in("z", "x"), all("a", ex("z'", imp(in("a", "z"), witness)))));
    Formula s2_3 = ex("z", all("a", ex("z'", conj(in("z", "x"), imp(in("a", "z"), witness)))));
    Formula s2_4 = ex("y", all("z", ex("a", conj(in("y", "x"), a))));
    Formula s2_5 = ex("y", all("z", ex("a", all("b", conj(in("y", "x"), a)))));
    const std::string bracket_note = "the display has unbalanced closing brackets; the balanced reading is stored";
    const std::vector<std::tuple<Formula, std::string, std::string>> step2{
        {s2_0, cat({"¬", kAChStarUnfolded}), ""},
        {s2_1, "∃z [z ∈ x ∧ ∀a (a ∈ z → ∃z' [z' ∈ x ∧ z ≠ z' ∧ a ∈ z'])]", ""},
        {s2_2, "∃z [z ∈ x ∧ ∀a ∃z' (a ∈ z → [z' ∈ x ∧ z ≠ z' ∧ a ∈ z'])]", bracket_note},
        {s2_3, "∃z ∀a ∃z' [z ∈ x ∧ (a ∈ z → [z' ∈ x ∧ z ≠ z' ∧ a ∈ z'])]", bracket_note},
        {s2_4, cat({"∃y ∀z ∃a (y ∈ x ∧ (", kA, "))"}), ""},
        {s2_5, cat({"∃y ∀z ∃a ∀b (y ∈ x ∧ (", kA, "))"}), ""},
    };

    const std::vector<std::pair<Formula, std::string>> main_chain{
        {ac_star, ac_star_text},
        {all("x", disj(neg(ach_star), s1_0)), cat({"∀x (¬", kAChStar, " ∨ ", std::get<1>(step1[0]), ")"})},
        {all("x", disj(s2_5, s1_3)),
         cat({"∀x [", std::get<1>(step2[5]), " ∨ ", std::get<1>(step1[3]), "]"})},
        {ac2, ac2_text},
    };

    auto add_chain = [&](const std::string& chain, std::vector<CatalogEntry> members) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < members.size(); ++i) {
            members[i].name = chain + "/" + std::to_string(i);
            names.push_back(members[i].name);
            add(std::move(members[i]));
        }
        chains_.emplace(chain, std::move(names));
    };

    std::vector<CatalogEntry> members;
    for (const auto& [f, text] : step1) {
        members.push_back({"", f, text, vars({"x"}), "choice-set side of the rewrite to AC**", ""});
    }
    add_chain("thm4.1-step1", std::move(members));
    members.clear();
    for (const auto& [f, text, note] : step2) {
        members.push_back({"", f, text, vars({"x"}), "negated AC_h* side of the rewrite to AC**", note});
    }
    add_chain("thm4.1-step2", std::move(members));
    members.clear();
    for (const auto& [f, text] : main_chain) {
        members.push_back({"", f, text, {}, "top-level rewrite from AC* to AC**", ""});
    }
    add_chain("thm4.1-main", std::move(members));
}

const Catalog& Catalog::standard() {
    static const Catalog instance;
    return instance;
}

std::string Catalog::resolve(std::string_view name) const {
    static const std::map<std::string, std::string, std::less<>> aliases{
        {"C̄", "C-bar"},         {"B̄", "B-bar"},          {"AC̄*", "AC-bar*"},
        {"AC̄**", "AC-bar**"},   {"Cbar", "C-bar"},             {"Bbar", "B-bar"},
        {"ACbar*", "AC-bar*"},        {"ACbar**", "AC-bar**"},       {"AC_h,1", "AC_h1"},
        {"AC_h,2", "AC_h2"},          {"AC_h^*", "AC_h*"},
    };
    if (auto it = aliases.find(name); it != aliases.end()) return it->second;
    return std::string{name};
}

bool Catalog::contains(std::string_view name) const { return index_.contains(resolve(name)); }

const CatalogEntry& Catalog::get(std::string_view name) const {
    auto it = index_.find(resolve(name));
    if (it == index_.end()) {
        std::string valid;
        for (const auto& e : entries_) {
            if (!valid.empty()) valid += ", ";
            valid += e.name;
        }
        throw UnknownNameError("unknown catalog name '" + std::string{name} + "'; valid names: " + valid);
    }
    return entries_[it->second];
}

std::vector<std::string> Catalog::names() const {
    std::vector<std::string> out;
    for (const auto& e : entries_) out.push_back(e.name);
    return out;
}

std::vector<CatalogEntry> Catalog::list_chain(std::string_view chain) const {
    auto it = chains_.find(chain);
    if (it == chains_.end()) {
        std::string valid;
        for (const auto& [n, members] : chains_) {
            if (!valid.empty()) valid += ", ";
            valid += n;
        }
        throw UnknownNameError("unknown chain '" + std::string{chain} + "'; valid chains: " + valid);
    }
    std::vector<CatalogEntry> out;
    for (const auto& n : it->second) out.push_back(get(n));
    return out;
}

std::vector<std::string> Catalog::chain_names() const {
    std::vector<std::string> out;
    for (const auto& [n, members] : chains_) out.push_back(n);
    return out;
}

}  // namespace qc
