#pragma once

#include <random>
#include <set>
#include <string>

#include "qc/formula.hpp"
#include "qc/model.hpp"

namespace qc::testing {

// Free variables computed from scratch with an explicit bound set.
inline void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (f.kind()) {
    case Kind::Member:
    case Kind::Equal:
        for (const auto* v : {&f.lhs(), &f.rhs()}) {
            if (!bound.contains(v->name())) out.insert(v->name());
        }
        return;
    case Kind::Not:
        collect_free(f.child(), bound, out);
        return;
    case Kind::Forall:
    case Kind::Exists: {
        bool fresh = bound.insert(f.bound().name()).second;
        collect_free(f.child(), bound, out);
        if (fresh) bound.erase(f.bound().name());
        return;
    }
    default:
        collect_free(f.left(), bound, out);
        collect_free(f.right(), bound, out);
    }
}

inline std::set<std::string> free_names(const Formula& f) {
    std::set<std::string> bound;
    std::set<std::string> out;
    collect_free(f, bound, out);
    return out;
}

inline std::set<std::string> names(const std::set<Variable>& vs) {
    std::set<std::string> out;
    for (const auto& v : vs) out.insert(v.name());
    return out;
}

inline FinStructure random_structure(std::mt19937_64& rng, std::size_t n) {
    FinStructure s{n};
    std::bernoulli_distribution coin(0.4);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) s.set_member(i, j, coin(rng));
    }
    return s;
}

inline Assignment random_assignment(std::mt19937_64& rng, std::size_t n, const std::set<Variable>& vars) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    Assignment a;
    for (const auto& v : vars) a.emplace(v, pick(rng));
    return a;
}


}  // namespace qc::testing
