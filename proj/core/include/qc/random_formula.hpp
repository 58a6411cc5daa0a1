#pragma once

// Seeded random formulas for round-trip and property tests.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qc/formula.hpp"

namespace qc {

struct RandomFormulaOptions {
    std::size_t max_depth = 5;
    std::vector<std::string> variables{"x", "y", "z", "a", "b"};
    // Make every formula a sentence by closing it universally.
    bool closed = false;
};

class RandomFormulaGenerator {
public:
    explicit RandomFormulaGenerator(std::uint64_t seed, RandomFormulaOptions options = {});

    Formula next();

private:
    Formula grow(std::size_t depth);
    Variable pick();

    std::mt19937_64 rng_;
    RandomFormulaOptions options_;
};

}  // namespace qc
