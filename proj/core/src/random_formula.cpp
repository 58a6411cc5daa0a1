#include "qc/random_formula.hpp"

namespace qc {

RandomFormulaGenerator::RandomFormulaGenerator(std::uint64_t seed, RandomFormulaOptions options)
    : rng_(seed), options_(std::move(options)) {
    if (options_.variables.empty()) throw FormulaError("random formulas need at least one variable");
}

Variable RandomFormulaGenerator::pick() {
    std::uniform_int_distribution<std::size_t> d(0, options_.variables.size() - 1);
    return Variable{options_.variables[d(rng_)]};
}

Formula RandomFormulaGenerator::grow(std::size_t depth) {
    std::uniform_int_distribution<int> choice(0, depth == 0 ? 1 : 9);
    switch (choice(rng_)) {
    case 0: return Formula::member(pick(), pick());
    case 1: return Formula::equal(pick(), pick());
    case 2: return Formula::negation(grow(depth - 1));
    case 3: return Formula::conjunction(grow(depth - 1), grow(depth - 1));
    case 4: return Formula::disjunction(grow(depth - 1), grow(depth - 1));
    case 5: return Formula::implication(grow(depth - 1), grow(depth - 1));
    case 6: return Formula::biconditional(grow(depth - 1), grow(depth - 1));
    case 7: return Formula::forall(pick(), grow(depth - 1));
    case 8: return Formula::exists(pick(), grow(depth - 1));
    default: {
        Variable v = pick();
        Variable t = pick();
        if (v == t) return Formula::member(v, t);
        std::uniform_int_distribution<int> coin(0, 1);
        return coin(rng_) != 0 ? forall_in(v, t, grow(depth - 1)) : exists_in(v, t, grow(depth - 1));
    }
    }
}

Formula RandomFormulaGenerator::next() {
    Formula f = grow(options_.max_depth);
    if (options_.closed) {
        for (const auto& v : free_vars(f)) f = Formula::forall(v, f);
    }
    return f;
}

}  // namespace qc
