#include "qc/hf.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdlib>

namespace qc::hf {

HFSet HFSet::of(std::initializer_list<HFSet> elements) {
    HFSet s;
    for (HFSet e : elements) s = s.with(e);
    return s;
}

std::size_t HFSet::size() const noexcept { return static_cast<std::size_t>(std::popcount(code_)); }

std::vector<HFSet> HFSet::members() const {
    std::vector<HFSet> out;
    for (std::uint64_t rest = code_; rest != 0; rest &= rest - 1) {
        out.push_back(HFSet{static_cast<std::uint64_t>(std::countr_zero(rest))});
    }
    return out;
}

HFSet HFSet::with(HFSet e) const {
    if (e.code_ >= 64) throw HFError("element code " + std::to_string(e.code_) + " does not fit in 64 bits");
    return HFSet{code_ | (std::uint64_t{1} << e.code_)};
}

unsigned HFSet::rank() const {
    unsigned r = 0;
    for (HFSet e : members()) r = std::max(r, e.rank() + 1);
    return r;
}

std::string to_string(HFSet s) {
    std::string out = "{";
    bool first = true;
    for (HFSet e : s.members()) {
        if (!first) out += ",";
        out += to_string(e);
        first = false;
    }
    return out + "}";
}

namespace {

class HFParser {
public:
    explicit HFParser(std::string_view text) : text_(text) {}

    HFSet parse_all() {
        HFSet s = parse_item();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return s;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw HFError("cannot read set at offset " + std::to_string(pos_) + ": " + why);
    }

    void skip_space() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n')) ++pos_;
    }

    HFSet parse_item() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        if (text_.substr(pos_).starts_with("∅")) {
            pos_ += std::string_view{"∅"}.size();
            return {};
        }
        char c = text_[pos_];
        if (c >= '0' && c <= '9') {
            std::uint64_t code = 0;
            auto [end, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), code);
            if (ec != std::errc{}) fail("code out of range");
            pos_ = static_cast<std::size_t>(end - text_.data());
            return HFSet::from_code(code);
        }
        if (c != '{') fail("expected '{', a code or ∅");
        ++pos_;
        HFSet s;
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '}') {
            ++pos_;
            return s;
        }
        while (true) {
            HFSet e = parse_item();
            if (e.code() >= 64) fail("element code " + std::to_string(e.code()) + " does not fit in 64 bits");
            s = s.with(e);
            skip_space();
            if (pos_ >= text_.size()) fail("unterminated set");
            if (text_[pos_] == ',') {
                ++pos_;
                continue;
            }
            if (text_[pos_] == '}') {
                ++pos_;
                return s;
            }
            fail("expected ',' or '}'");
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

HFSet parse_hf(std::string_view text) { return HFParser{text}.parse_all(); }

HFSet union_of(HFSet x) {
    std::uint64_t u = 0;
    for (HFSet z : x.members()) u |= z.code();
    return HFSet::from_code(u);
}

HFLimits HFLimits::from_env() {
    HFLimits limits;
    if (const char* env = std::getenv("QC_MAX_RANK")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0') limits.max_rank = std::min<unsigned long>(v, 5);
    }
    return limits;
}

HFUniverse::HFUniverse(std::size_t rank) : rank_(rank), size_(0) {
    if (rank > 5) throw HFError("rank " + std::to_string(rank) + " is above 5");
    for (std::size_t k = 0; k < rank; ++k) size_ = std::uint64_t{1} << size_;
}

std::vector<HFSet> HFUniverse::elements() const {
    std::vector<HFSet> out;
    out.reserve(size_);
    for (std::uint64_t i = 0; i < size_; ++i) out.push_back(HFSet::from_code(i));
    return out;
}

HFUniverse v_universe(std::size_t k, HFLimits limits) {
    if (k > limits.max_rank) {
        throw HFError("rank " + std::to_string(k) + " is above the cap " + std::to_string(limits.max_rank));
    }
    return HFUniverse{k};
}

std::size_t HFStructure::index_of(HFSet s) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), s);
    if (it == elements.end() || *it != s) throw HFError(to_string(s) + " is not in the structure");
    return static_cast<std::size_t>(it - elements.begin());
}

namespace {

HFStructure membership_structure(std::vector<HFSet> elements) {
    FinStructure s{elements.size()};
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (std::size_t j = 0; j < elements.size(); ++j) {
            s.set_member(i, j, elements[j].contains(elements[i]));
        }
    }
    return {std::move(s), std::move(elements)};
}

}  // namespace

HFStructure structure_of(std::size_t k, HFLimits limits) {
    if (k > 4) throw HFError("structure_of supports rank up to 4, got " + std::to_string(k));
    return membership_structure(v_universe(k, limits).elements());
}

HFStructure closure_structure(const std::vector<HFSet>& roots) {
    std::vector<HFSet> seen;
    std::vector<HFSet> todo(roots.begin(), roots.end());
    while (!todo.empty()) {
        HFSet s = todo.back();
        todo.pop_back();
        if (std::find(seen.begin(), seen.end(), s) != seen.end()) continue;
        seen.push_back(s);
        for (HFSet e : s.members()) todo.push_back(e);
    }
    std::sort(seen.begin(), seen.end());
    return membership_structure(std::move(seen));
}

bool is_choice_set(HFSet y, HFSet x) {
    for (HFSet z : x.members()) {
        if (!z.empty() && set_intersection(z, y).size() != 1) return false;
    }
    return true;
}

bool sat_ach1(HFSet x) { return !x.contains(HFSet{}); }

bool sat_ach2(HFSet x) {
    auto zs = x.members();
    for (std::size_t i = 0; i < zs.size(); ++i) {
        for (std::size_t j = i + 1; j < zs.size(); ++j) {
            if (!set_intersection(zs[i], zs[j]).empty()) return false;
        }
    }
    return true;
}

bool sat_ach_star(HFSet x) {
    for (HFSet z : x.members()) {
        if (phi(z, x).empty()) return false;
    }
    return true;
}

HFSet phi(HFSet z, HFSet x) {
    std::uint64_t others = 0;
    for (HFSet w : x.members()) {
        if (w != z) others |= w.code();
    }
    return HFSet::from_code(z.code() & ~others);
}

HFSet star(HFSet x) {
    HFSet out;
    for (HFSet z : x.members()) out = out.with(phi(z, x));
    return out;
}

std::optional<HFSet> least_choice_set(HFSet x) {
    if (sat_ach2(x)) {
        HFSet y;
        for (HFSet z : x.members()) {
            if (!z.empty()) y = y.with(z.members().front());
        }
        return y;
    }
    const std::uint64_t mask = union_of(x).code();
    if (std::popcount(mask) > 24) throw HFError("too many candidate elements for an exhaustive choice");
    // Only subsets of ∪x can be least; walk them in increasing code order.
    std::uint64_t s = 0;
    do {
        if (is_choice_set(HFSet::from_code(s), x)) return HFSet::from_code(s);
        s = (s - mask) & mask;
    } while (s != 0);
    return std::nullopt;
}

std::string_view branch_name(PatchBranch b) {
    switch (b) {
    case PatchBranch::None: return "none";
    case PatchBranch::PairWithEmpty: return "pair_with_empty";
    case PatchBranch::PairWithYPrime: return "pair_with_yprime";
    }
    return "?";
}

ChoiceTrace construct_choice_set(HFSet x, ConstructOptions options) {
    if (!sat_ach_star(x)) {
        throw HFError("construct_choice_set needs every element of " + to_string(x) +
                      " to have a point in no other element");
    }
    ChoiceTrace t;
    t.x = x;
    t.x_star = star(x);
    auto y = least_choice_set(t.x_star);
    if (!y) throw HFError("no choice-set for " + to_string(t.x_star));
    t.y = *y;
    t.y_prime = set_intersection(t.y, union_of(t.x_star));
    t.result = t.y_prime;

    if (x.contains(t.y_prime)) {
        if (x != HFSet::of({t.y_prime}) || t.y_prime.size() != 1) {
            throw PostconditionError("y' lies in x but x is not {y'} with y' a singleton", t);
        }
        HFSet a = t.y_prime.members().front();
        bool pair_with_yprime = a.empty();
        if (options.wrong_branch) pair_with_yprime = !pair_with_yprime;
        t.branch = pair_with_yprime ? PatchBranch::PairWithYPrime : PatchBranch::PairWithEmpty;
        HFSet b = pair_with_yprime ? t.y_prime : HFSet{};
        t.result = HFSet::of({a, b});
    }

    if (x.contains(t.result)) throw PostconditionError("result " + to_string(t.result) + " is an element of x", t);
    if (!is_choice_set(t.result, x)) {
        throw PostconditionError("result " + to_string(t.result) + " is not a choice-set for x", t);
    }
    return t;
}

}  // namespace qc::hf
