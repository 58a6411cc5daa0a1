#include "qc/model.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

namespace qc {

FinStructure::FinStructure(std::size_t n) : n_(n), bits_(n * n, 0) {
    if (n == 0) throw ModelError("structures need a nonempty domain");
}

FinStructure FinStructure::from_code(std::size_t n, std::uint64_t code) {
    if (n * n > 64) throw ModelError("structure codes only cover sizes up to 8");
    FinStructure s{n};
    for (std::size_t bit = 0; bit < n * n; ++bit) {
        s.bits_[bit] = static_cast<std::uint8_t>((code >> bit) & 1u);
    }
    return s;
}

std::uint64_t FinStructure::code() const {
    if (n_ * n_ > 64) throw ModelError("structure codes only cover sizes up to 8");
    std::uint64_t code = 0;
    for (std::size_t bit = 0; bit < n_ * n_; ++bit) {
        if (bits_[bit]) code |= std::uint64_t{1} << bit;
    }
    return code;
}

FinStructure FinStructure::permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != n_) throw ModelError("permutation size does not match the domain");
    FinStructure out{n_};
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            out.set_member(perm[i], perm[j], member(i, j));
        }
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> FinStructure::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (member(i, j)) out.emplace_back(i, j);
        }
    }
    return out;
}

namespace {

std::size_t lookup(const FinStructure& s, const Assignment& asg, const Variable& v) {
    auto it = asg.find(v);
    if (it == asg.end()) throw ModelError("variable " + v.name() + " is not assigned");
    if (it->second >= s.size()) throw ModelError("variable " + v.name() + " is assigned outside the domain");
    return it->second;
}

bool eval_ref(const FinStructure& s, Assignment& asg, const Formula& f) {
    switch (f.kind()) {
    case Kind::Member:
        return s.member(lookup(s, asg, f.lhs()), lookup(s, asg, f.rhs()));
    case Kind::Equal:
        return lookup(s, asg, f.lhs()) == lookup(s, asg, f.rhs());
    case Kind::Not:
        return !eval_ref(s, asg, f.child());
    case Kind::And:
        return eval_ref(s, asg, f.left()) && eval_ref(s, asg, f.right());
    case Kind::Or:
        return eval_ref(s, asg, f.left()) || eval_ref(s, asg, f.right());
    case Kind::Implies:
        return !eval_ref(s, asg, f.left()) || eval_ref(s, asg, f.right());
    case Kind::Iff:
        return eval_ref(s, asg, f.left()) == eval_ref(s, asg, f.right());
    case Kind::Forall:
    case Kind::Exists: {
        const Variable& v = f.bound();
        std::optional<std::size_t> saved;
        if (auto it = asg.find(v); it != asg.end()) saved = it->second;
        bool want = f.kind() == Kind::Exists;
        bool result = !want;
        for (std::size_t d = 0; d < s.size(); ++d) {
            asg[v] = d;
            if (eval_ref(s, asg, f.child()) == want) {
                result = want;
                break;
            }
        }
        if (saved) asg[v] = *saved;
        else asg.erase(v);
        return result;
    }
    }
    return false;
}

}  // namespace

bool evaluate(const FinStructure& s, const Assignment& asg, const Formula& f) {
    Assignment scratch = asg;
    return eval_ref(s, scratch, f);
}

CompiledFormula::CompiledFormula(const Formula& f) {
    std::set<Variable> free = free_vars(f);
    free_.assign(free.begin(), free.end());
    std::vector<std::pair<Variable, std::uint16_t>> scope;
    for (const auto& v : free_) {
        scope.emplace_back(v, static_cast<std::uint16_t>(slots_++));
    }
    root_ = lower(f, scope);
}

std::int32_t CompiledFormula::lower(const Formula& f, std::vector<std::pair<Variable, std::uint16_t>>& scope) {
    auto slot_of = [&](const Variable& v) -> std::uint16_t {
        for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
            if (it->first == v) return it->second;
        }
        throw ModelError("internal: unscoped variable " + v.name());
    };
    Op op{f.kind()};
    switch (f.kind()) {
    case Kind::Member:
    case Kind::Equal:
        op.a = slot_of(f.lhs());
        op.b = slot_of(f.rhs());
        break;
    case Kind::Not:
        op.left = lower(f.child(), scope);
        break;
    case Kind::Forall:
    case Kind::Exists: {
        if (slots_ >= std::numeric_limits<std::uint16_t>::max()) throw ModelError("formula has too many binders");
        op.a = static_cast<std::uint16_t>(slots_++);
        scope.emplace_back(f.bound(), op.a);
        op.left = lower(f.child(), scope);
        scope.pop_back();
        break;
    }
    default:
        op.left = lower(f.left(), scope);
        op.right = lower(f.right(), scope);
    }
    ops_.push_back(op);
    return static_cast<std::int32_t>(ops_.size() - 1);
}

bool CompiledFormula::run(std::int32_t index, const FinStructure& s, std::vector<std::size_t>& env) const {
    const Op& op = ops_[static_cast<std::size_t>(index)];
    switch (op.kind) {
    case Kind::Member:
        return s.member(env[op.a], env[op.b]);
    case Kind::Equal:
        return env[op.a] == env[op.b];
    case Kind::Not:
        return !run(op.left, s, env);
    case Kind::And:
        return run(op.left, s, env) && run(op.right, s, env);
    case Kind::Or:
        return run(op.left, s, env) || run(op.right, s, env);
    case Kind::Implies:
        return !run(op.left, s, env) || run(op.right, s, env);
    case Kind::Iff:
        return run(op.left, s, env) == run(op.right, s, env);
    case Kind::Forall:
        for (std::size_t d = 0; d < s.size(); ++d) {
            env[op.a] = d;
            if (!run(op.left, s, env)) return false;
        }
        return true;
    case Kind::Exists:
        for (std::size_t d = 0; d < s.size(); ++d) {
            env[op.a] = d;
            if (run(op.left, s, env)) return true;
        }
        return false;
    }
    return false;
}

bool CompiledFormula::evaluate(const FinStructure& s, std::span<const std::size_t> free_values) const {
    std::vector<std::size_t> env;
    return evaluate(s, free_values, env);
}

bool CompiledFormula::evaluate(const FinStructure& s, std::span<const std::size_t> free_values,
                               std::vector<std::size_t>& env) const {
    if (free_values.size() != free_.size()) throw ModelError("wrong number of free-variable values");
    env.assign(slots_, 0);
    for (std::size_t i = 0; i < free_values.size(); ++i) {
        if (free_values[i] >= s.size()) throw ModelError("free-variable value outside the domain");
        env[i] = free_values[i];
    }
    return run(root_, s, env);
}

StructureLimits StructureLimits::from_env() {
    StructureLimits limits;
    if (const char* raw = std::getenv("QC_MAX_N")) {
        try {
            limits.max_size = static_cast<std::size_t>(std::stoul(raw));
        } catch (const std::exception&) {
            throw ModelError(std::string{"QC_MAX_N is not a number: "} + raw);
        }
    }
    return limits;
}

StructureSpace::StructureSpace(std::size_t n, StructureLimits limits) : n_(n), count_(0) {
    if (n == 0) throw ModelError("structure size must be at least 1");
    if (n > limits.max_size) {
        throw ModelError("structure size " + std::to_string(n) + " exceeds the cap " + std::to_string(limits.max_size));
    }
    if (n * n > 63) throw ModelError("structure size " + std::to_string(n) + " is beyond the enumerable range");
    count_ = std::uint64_t{1} << (n * n);
}

std::vector<StructureSpace::Range> StructureSpace::chunks(std::size_t k) const {
    if (k == 0) k = 1;
    std::vector<Range> out;
    std::uint64_t step = count_ / k;
    std::uint64_t extra = count_ % k;
    std::uint64_t begin = 0;
    for (std::size_t i = 0; i < k; ++i) {
        std::uint64_t len = step + (i < extra ? 1 : 0);
        if (len) out.push_back({begin, begin + len});
        begin += len;
    }
    return out;
}

std::uint64_t canonical_code(const FinStructure& s) {
    std::size_t n = s.size();
    if (n * n > 64) throw ModelError("structure codes only cover sizes up to 8");
    auto edges = s.edges();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    do {
        std::uint64_t code = 0;
        for (const auto& [i, j] : edges) code |= std::uint64_t{1} << (perm[i] * n + perm[j]);
        best = std::min(best, code);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

namespace {

struct Hit {
    std::uint64_t structure;
    std::vector<std::size_t> values;
};

// Scans [range.begin, range.end) in order; stops at the first failure or once
// another worker has reported a failure at a lower index.
std::optional<Hit> scan(const CompiledFormula& cf, const StructureSpace& space, StructureSpace::Range range,
                        bool prune, std::atomic<std::uint64_t>& best) {
    const std::size_t n = space.domain_size();
    const std::size_t k = cf.free_variables().size();
    std::vector<std::size_t> values(k, 0);
    std::vector<std::size_t> env;
    for (std::uint64_t idx = range.begin; idx < range.end; ++idx) {
        if (idx >= best.load(std::memory_order_relaxed)) return std::nullopt;
        FinStructure s = space.at(idx);
        if (prune && canonical_code(s) != idx) continue;
        std::fill(values.begin(), values.end(), 0);
        while (true) {
            if (!cf.evaluate(s, values, env)) {
                std::uint64_t seen = best.load();
                while (idx < seen && !best.compare_exchange_weak(seen, idx)) {
                }
                return Hit{idx, values};
            }
            bool exhausted = true;
            for (std::size_t pos = k; pos > 0; --pos) {
                if (++values[pos - 1] < n) {
                    exhausted = false;
                    break;
                }
                values[pos - 1] = 0;
            }
            if (exhausted) break;
        }
    }
    return std::nullopt;
}

}  // namespace

Verdict check_valid(const Formula& f, std::size_t nmax, const CheckOptions& options) {
    CompiledFormula cf{f};
    if (!cf.free_variables().empty() && !options.close_free) {
        throw ModelError("formula has free variables; close them universally to check validity");
    }
    for (std::size_t n = 1; n <= nmax; ++n) {
        StructureSpace space{n, options.limits};
        std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
        std::vector<std::optional<Hit>> hits;
        auto ranges = space.chunks(std::max<std::size_t>(1, options.jobs));
        if (ranges.size() == 1) {
            hits.push_back(scan(cf, space, ranges.front(), options.prune_isomorphs, best));
        } else {
            hits.resize(ranges.size());
            std::vector<std::jthread> workers;
            for (std::size_t w = 0; w < ranges.size(); ++w) {
                workers.emplace_back([&, w] { hits[w] = scan(cf, space, ranges[w], options.prune_isomorphs, best); });
            }
        }
        std::optional<Hit> first;
        for (auto& h : hits) {
            if (h && (!first || h->structure < first->structure)) first = std::move(h);
        }
        if (!first) continue;

        Counterexample cex{space.at(first->structure), {}};
        for (std::size_t i = 0; i < first->values.size(); ++i) {
            cex.assignment.emplace(cf.free_variables()[i], first->values[i]);
        }
        if (evaluate(cex.structure, cex.assignment, f)) {
            throw std::logic_error("internal: counterexample does not re-evaluate to false");
        }
        return cex;
    }
    return ValidUpTo{nmax};
}

Verdict check_equiv(const Formula& f, const Formula& g, std::size_t nmax, CheckOptions options) {
    options.close_free = true;
    return check_valid(Formula::biconditional(f, g), nmax, options);
}

}  // namespace qc
