#pragma once

// Text syntax for (∈,=)-formulas.
//
//   atoms        x in y | x = y            (also ∈, ∉, ≠, !=)
//   negation     ~ f                       (also ¬)
//   connectives  & | -> <->                (also ∧ ∨ → ↔), tightest first;
//                -> is right-associative, the others associate to the left
//   quantifiers  A x. f | E x. f           (also forall/exists/∀/∃); the dotted
//                form scopes as far right as possible
//                ∀x f                      undotted form binds one unary operand
//                ∀x ∈ t f, ∃x ∈ t f        bounded sugar for ∀x(x∈t → f), ∃x(x∈t ∧ f)
//   grouping     ( f ) or [ f ]

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qc/formula.hpp"

namespace qc {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message);

    std::size_t line;
    std::size_t column;
    std::string message;
};

Formula parse(std::string_view text);

enum class PrintStyle { Ascii, Unicode };

// Minimal-parenthesis rendering; parse(print(f)) == f.
std::string print(const Formula& f, PrintStyle style = PrintStyle::Ascii);

// Surface counts of a rendering, collected while parsing it.
struct SurfaceStats {
    std::size_t atoms = 0;
    std::size_t connectives = 0;
    std::size_t negations = 0;
    std::size_t quantifiers = 0;
    std::size_t parentheses = 0;
};

SurfaceStats surface_stats(std::string_view text);

// Symbol count of a rendering: an atomic formula is 3 symbols, a binary
// connective 1, a negation 1 (the sugared u ∉ v and u ≠ v carry one), a
// quantifier with its variable 2 and every bracket character 1. A bounded
// quantifier counts as its expansion without the implicit brackets. Throws
// ParseError if the text is not a formula.
std::size_t token_count(std::string_view text);

}  // namespace qc
