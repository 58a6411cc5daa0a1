#pragma once

// Named encodings of the choice-related formulas, each with the rendering it
// is displayed in. Renderings keep the displayed parenthesization so that
// symbol counts can be taken from them.
//
// Index (stable identifiers):
//   C, C-unique, choice-A, choice-B, choice-schema, C3
//   AC_h1, AC_h2, AC, AC_h*, AC*, hyp-strengthening, AC*->AC
//   phi
//   A, B, AC**, disjoint-guards
//   C-bar, B-bar, AC-bar*, AC-bar**
//   thm4.1-step1/0..3, thm4.1-step2/0..5, thm4.1-main/0..3
// Chains: thm4.1-step1, thm4.1-step2, thm4.1-main.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qc/formula.hpp"

namespace qc {

struct CatalogEntry {
    std::string name;
    Formula formula;
    std::string official_rendering;
    std::vector<Variable> declared_free_vars;
    std::string summary;
    // Set when the stored reading differs from the display it was taken from.
    std::string note;
};

class UnknownNameError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Deliberate corruptions used to show that the verification suite notices them.
struct CatalogFaults {
    // The innermost ∀b of AC** becomes ∃b.
    bool flip_quantifier = false;
    // B loses its uniqueness conjunct.
    bool drop_conjunct = false;
};

class Catalog {
public:
    explicit Catalog(CatalogFaults faults = {});

    static const Catalog& standard();

    // Accepts the index names and a few spelling aliases (AC̄**, C̄, ...).
    const CatalogEntry& get(std::string_view name) const;
    bool contains(std::string_view name) const;
    std::vector<std::string> names() const;

    std::vector<CatalogEntry> list_chain(std::string_view chain) const;
    std::vector<std::string> chain_names() const;

    // The slots behind the choice-schema entry; its A reading occurs inside C.
    const SchemaInstance& choice_schema() const noexcept { return *schema_; }

private:
    void add(CatalogEntry entry);
    std::string resolve(std::string_view name) const;

    std::optional<SchemaInstance> schema_;
    std::vector<CatalogEntry> entries_;
    std::map<std::string, std::size_t, std::less<>> index_;
    std::map<std::string, std::vector<std::string>, std::less<>> chains_;
};

}  // namespace qc
