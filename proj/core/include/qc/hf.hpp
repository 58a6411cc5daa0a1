#pragma once

// Hereditarily finite sets under the bit-sum coding code(s) = Σ 2^code(e).
// A set is stored as its code in 64 bits, so every element must have a code
// below 64; that covers all members of V_5 (the subsets of V_4).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qc/model.hpp"

namespace qc::hf {

class HFError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class HFSet {
public:
    constexpr HFSet() = default;
    static constexpr HFSet from_code(std::uint64_t code) { return HFSet{code}; }
    // Throws HFError when an element's code does not fit.
    static HFSet of(std::initializer_list<HFSet> elements);

    constexpr std::uint64_t code() const noexcept { return code_; }
    constexpr bool empty() const noexcept { return code_ == 0; }
    constexpr bool contains(HFSet e) const noexcept { return e.code_ < 64 && ((code_ >> e.code_) & 1U) != 0; }
    std::size_t size() const noexcept;
    // Elements in increasing code order.
    std::vector<HFSet> members() const;
    HFSet with(HFSet e) const;
    unsigned rank() const;

    constexpr auto operator<=>(const HFSet&) const = default;

private:
    constexpr explicit HFSet(std::uint64_t code) : code_(code) {}
    std::uint64_t code_ = 0;
};

// Nested braces with elements in code order: ∅ is "{}", {∅} is "{{}}".
std::string to_string(HFSet s);
// Accepts nested braces (with "∅" or "0" for the empty set inside) or a
// decimal code. Throws HFError.
HFSet parse_hf(std::string_view text);

constexpr HFSet set_union(HFSet a, HFSet b) { return HFSet::from_code(a.code() | b.code()); }
constexpr HFSet set_intersection(HFSet a, HFSet b) { return HFSet::from_code(a.code() & b.code()); }
constexpr bool is_subset(HFSet a, HFSet b) { return (a.code() & ~b.code()) == 0; }
// ∪x
HFSet union_of(HFSet x);

struct HFLimits {
    // Largest rank accepted by v_universe; QC_MAX_RANK overrides the default.
    std::size_t max_rank = 5;

    static HFLimits from_env();
};

// V_k: the sets of rank below k. Its elements are exactly the codes
// 0 .. |V_k|-1, so the universe is stored as its size.
class HFUniverse {
public:
    explicit HFUniverse(std::size_t rank);

    std::size_t rank() const noexcept { return rank_; }
    std::uint64_t size() const noexcept { return size_; }
    HFSet at(std::uint64_t i) const { return HFSet::from_code(i); }
    bool contains(HFSet s) const noexcept { return s.code() < size_; }
    std::vector<HFSet> elements() const;

private:
    std::size_t rank_;
    std::uint64_t size_;
};

// Throws HFError above the cap.
HFUniverse v_universe(std::size_t k, HFLimits limits = HFLimits::from_env());

// V_k as a membership structure. Domain index i is the set with code i.
struct HFStructure {
    FinStructure structure;
    std::vector<HFSet> elements;

    std::size_t index_of(HFSet s) const;
};

// Throws HFError for k > 4 or above the rank cap.
HFStructure structure_of(std::size_t k, HFLimits limits = HFLimits::from_env());

// The transitive closure of the given sets (including themselves) as a
// membership structure, elements in code order.
HFStructure closure_structure(const std::vector<HFSet>& roots);

// Every non-empty z ∈ x meets y in exactly one element.
bool is_choice_set(HFSet y, HFSet x);
// No element of x is empty.
bool sat_ach1(HFSet x);
// Distinct elements of x are disjoint.
bool sat_ach2(HFSet x);
// Every element of x has an element lying in no other element of x.
bool sat_ach_star(HFSet x);

// z_x = {a ∈ z | ∀z* ∈ x (z ≠ z* → a ∉ z*)}; defined for any z.
HFSet phi(HFSet z, HFSet x);
// x* = {z_x | z ∈ x}
HFSet star(HFSet x);

// The choice-set for x with the least code, or nullopt when none exists.
// Throws HFError when ∪x has more than 24 elements and x is not disjoint.
std::optional<HFSet> least_choice_set(HFSet x);

enum class PatchBranch { None, PairWithEmpty, PairWithYPrime };

std::string_view branch_name(PatchBranch b);

struct ChoiceTrace {
    HFSet x;
    HFSet x_star;
    HFSet y;
    HFSet y_prime;
    PatchBranch branch = PatchBranch::None;
    HFSet result;
};

struct ConstructOptions {
    // Fault injection: take the other pairing branch.
    bool wrong_branch = false;
};

class PostconditionError : public HFError {
public:
    PostconditionError(const std::string& what, ChoiceTrace trace) : HFError(what), trace_(trace) {}
    const ChoiceTrace& trace() const noexcept { return trace_; }

private:
    ChoiceTrace trace_;
};

// Builds a choice-set for x that is not an element of x: a choice-set y for
// x*, cut down to y' = y ∩ ∪x*, and paired up when y' happens to lie in x.
// Throws HFError unless sat_ach_star(x), and PostconditionError when the
// result is in x or is not a choice-set for x.
ChoiceTrace construct_choice_set(HFSet x, ConstructOptions options = {});

}  // namespace qc::hf
