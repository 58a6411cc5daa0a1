#pragma once

// The full verification suite and its JSON reports.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qc/model.hpp"
#include "qc/transforms.hpp"

namespace qc {

// Evidence for a failed check. When `structure` and `formula` are present the
// formula evaluates to false in the structure under `assignment`, which
// verify_witness re-checks from scratch.
struct Witness {
    std::optional<FinStructure> structure;
    std::map<std::string, std::size_t> assignment;
    std::string formula;
    // Sets involved in a hereditarily-finite check, by role, in brace notation.
    std::map<std::string, std::string> hf;
    std::string note;
};

Witness witness_from(const Counterexample& cx, const Formula& falsified);

// True when the witness carries a structure and formula and the formula is
// false there. Throws ParseError or ModelError on a malformed witness.
bool verify_witness(const Witness& w);

struct CheckReport {
    std::string check;
    std::string citation;
    std::vector<std::pair<std::string, std::int64_t>> params;
    bool passed = false;
    std::optional<Witness> witness;
    std::vector<RewriteStep> trace;
    double millis = 0;
};

struct SuiteFaults {
    // The innermost ∀b of AC** becomes ∃b.
    bool flip_quantifier = false;
    // B loses its uniqueness conjunct.
    bool drop_conjunct = false;
    // construct_choice_set takes the other pairing branch.
    bool wrong_patch_branch = false;
};

struct SuiteOptions {
    std::size_t nmax = 3;
    std::size_t rank = 4;
    std::size_t jobs = 1;
    std::uint64_t seed = 20240611;
    std::size_t random_formulas = 10000;
    SuiteFaults faults;
    // Stop before starting a check once this much time has passed.
    std::optional<std::chrono::milliseconds> budget;
    // Called after each check finishes.
    std::function<void(const CheckReport&)> on_report;
};

struct SuiteResult {
    std::vector<CheckReport> reports;
    bool complete = true;

    bool passed() const;
};

// Throws std::invalid_argument unless nmax >= 2 and rank >= 3.
SuiteResult verify_paper(const SuiteOptions& options);

std::string witness_json(const Witness& w);
std::string trace_json(const Trace& t);
std::string report_json(const CheckReport& r);
// Reports in order plus the complete/passed flags. Identical runs produce
// identical text apart from the millis fields.
std::string suite_json(const SuiteResult& result, const SuiteOptions& options);

// Reads back a witness object produced by witness_json.
Witness parse_witness_json(const std::string& text);

}  // namespace qc
