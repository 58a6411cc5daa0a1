#pragma once

// Finite membership structures, Tarskian evaluation and exhaustive validity
// checking. A structure of size n has domain {0, ..., n-1} and an arbitrary
// binary relation; no set-theoretic axiom is assumed.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "qc/formula.hpp"

namespace qc {

class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FinStructure {
public:
    explicit FinStructure(std::size_t n);

    // Row-major bit counter: bit i*n + j of `code` is "i ∈ j". Requires n*n <= 64.
    static FinStructure from_code(std::size_t n, std::uint64_t code);

    std::size_t size() const noexcept { return n_; }
    bool member(std::size_t i, std::size_t j) const { return bits_[i * n_ + j] != 0; }
    void set_member(std::size_t i, std::size_t j, bool value) { bits_[i * n_ + j] = value ? 1 : 0; }

    std::uint64_t code() const;

    // The image structure under the relabelling i ↦ perm[i].
    FinStructure permuted(std::span<const std::size_t> perm) const;

    // All pairs (i, j) with i ∈ j, row-major.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    bool operator==(const FinStructure&) const = default;

private:
    std::size_t n_;
    std::vector<std::uint8_t> bits_;
};

using Assignment = std::map<Variable, std::size_t>;

// Reference semantics straight from the syntax tree. Throws ModelError on an
// unassigned free variable or an out-of-range value.
bool evaluate(const FinStructure& s, const Assignment& asg, const Formula& f);

// A formula lowered to a flat program over variable slots. Free variables
// occupy slots 0..k-1 in sorted order; every binder gets its own slot.
class CompiledFormula {
public:
    explicit CompiledFormula(const Formula& f);

    std::span<const Variable> free_variables() const noexcept { return free_; }

    // `free_values` is indexed like free_variables().
    bool evaluate(const FinStructure& s, std::span<const std::size_t> free_values) const;
    // Same, reusing `scratch` for the slot environment.
    bool evaluate(const FinStructure& s, std::span<const std::size_t> free_values,
                  std::vector<std::size_t>& scratch) const;

private:
    struct Op {
        Kind kind;
        std::uint16_t a = 0;  // slot (atoms: lhs, quantifiers: binder)
        std::uint16_t b = 0;  // slot (atoms: rhs)
        std::int32_t left = -1;
        std::int32_t right = -1;
    };
    std::int32_t lower(const Formula& f, std::vector<std::pair<Variable, std::uint16_t>>& scope);
    bool run(std::int32_t op, const FinStructure& s, std::vector<std::size_t>& env) const;

    std::vector<Op> ops_;
    std::vector<Variable> free_;
    std::size_t slots_ = 0;
    std::int32_t root_ = -1;
};

struct StructureLimits {
    // Largest domain size accepted by the enumerator; QC_MAX_N overrides the default.
    std::size_t max_size = 5;

    static StructureLimits from_env();
};

// The 2^(n²) structures of size n, indexed by their code.
class StructureSpace {
public:
    explicit StructureSpace(std::size_t n, StructureLimits limits = StructureLimits::from_env());

    std::size_t domain_size() const noexcept { return n_; }
    std::uint64_t count() const noexcept { return count_; }
    FinStructure at(std::uint64_t index) const { return FinStructure::from_code(n_, index); }

    struct Range {
        std::uint64_t begin;
        std::uint64_t end;
    };
    // k contiguous chunks covering [0, count()), in order; empty chunks omitted.
    std::vector<Range> chunks(std::size_t k) const;

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::uint64_t i = 0; i < count_; ++i) fn(at(i));
    }

private:
    std::size_t n_;
    std::uint64_t count_;
};

struct ValidUpTo {
    std::size_t nmax;
};

struct Counterexample {
    FinStructure structure;
    Assignment assignment;
};

using Verdict = std::variant<ValidUpTo, Counterexample>;

inline bool is_valid(const Verdict& v) { return std::holds_alternative<ValidUpTo>(v); }

struct CheckOptions {
    // Free variables are treated as universally quantified; otherwise a formula
    // with free variables is rejected.
    bool close_free = false;
    std::size_t jobs = 1;
    // Skip structures that are not the least code in their isomorphism class.
    bool prune_isomorphs = false;
    StructureLimits limits = StructureLimits::from_env();
};

// ValidUpTo(nmax) iff f holds in every structure of size 1..nmax under every
// assignment. Otherwise returns the counterexample of least size, then least
// structure code, then least assignment in lexicographic order of the sorted
// free variables. Every returned counterexample is re-checked against the
// reference evaluator.
Verdict check_valid(const Formula& f, std::size_t nmax, const CheckOptions& options = {});

// check_valid of f ↔ g with all free variables universally closed.
Verdict check_equiv(const Formula& f, const Formula& g, std::size_t nmax, CheckOptions options = {});

// The least code among all relabellings of s.
std::uint64_t canonical_code(const FinStructure& s);

}  // namespace qc
