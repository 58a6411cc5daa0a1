#include "qc/report.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "qc/catalog.hpp"
#include "qc/hf.hpp"
#include "qc/parser.hpp"
#include "qc/random_formula.hpp"

namespace qc {

using json = nlohmann::ordered_json;

Witness witness_from(const Counterexample& cx, const Formula& falsified) {
    Witness w;
    w.structure = cx.structure;
    for (const auto& [v, value] : cx.assignment) w.assignment.emplace(v.name(), value);
    w.formula = print(falsified);
    return w;
}

bool verify_witness(const Witness& w) {
    if (!w.structure || w.formula.empty()) return false;
    Assignment asg;
    for (const auto& [name, value] : w.assignment) asg.emplace(Variable{name}, value);
    return !evaluate(*w.structure, asg, parse(w.formula));
}

bool SuiteResult::passed() const {
    if (!complete) return false;
    for (const auto& r : reports) {
        if (!r.passed) return false;
    }
    return true;
}

namespace {

using Clock = std::chrono::steady_clock;
using Params = std::vector<std::pair<std::string, std::int64_t>>;
using hf::HFSet;

struct Outcome {
    bool passed = true;
    std::optional<Witness> witness;
    std::vector<RewriteStep> trace;
};

Outcome fail_note(std::string note) {
    Witness w;
    w.note = std::move(note);
    return {false, std::move(w), {}};
}

Outcome from_verdict(const Verdict& v, const Formula& falsified) {
    if (is_valid(v)) return {};
    return {false, witness_from(std::get<Counterexample>(v), falsified), {}};
}

Witness hf_witness(const std::vector<std::pair<std::string, HFSet>>& sets, std::string note) {
    std::vector<HFSet> roots;
    for (const auto& [role, s] : sets) roots.push_back(s);
    hf::HFStructure hs = hf::closure_structure(roots);
    Witness w;
    w.structure = hs.structure;
    for (const auto& [role, s] : sets) {
        w.assignment.emplace(role, hs.index_of(s));
        w.hf.emplace(role, hf::to_string(s));
    }
    w.note = std::move(note);
    return w;
}

class Runner {
public:
    explicit Runner(const SuiteOptions& options) : options_(options), start_(Clock::now()) {}

    void run(std::string check, std::string citation, Params params, const std::function<Outcome()>& body) {
        if (!result_.complete) return;
        if (options_.budget && Clock::now() - start_ > *options_.budget) {
            result_.complete = false;
            return;
        }
        auto t0 = Clock::now();
        Outcome outcome;
        try {
            outcome = body();
        } catch (const std::exception& e) {
            outcome = fail_note(std::string{"error: "} + e.what());
        }
        CheckReport r;
        r.check = std::move(check);
        r.citation = std::move(citation);
        r.params = std::move(params);
        r.passed = outcome.passed;
        r.witness = std::move(outcome.witness);
        r.trace = std::move(outcome.trace);
        r.millis = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        if (options_.on_report) options_.on_report(r);
        result_.reports.push_back(std::move(r));
    }

    SuiteResult take() { return std::move(result_); }

private:
    const SuiteOptions& options_;
    Clock::time_point start_;
    SuiteResult result_;
};

// Runs `property` over every subset x of V_rank and reports the first failure.
Outcome sweep(std::size_t rank, const std::function<std::optional<Witness>(HFSet)>& property) {
    const std::uint64_t width = hf::v_universe(rank).size();
    const std::uint64_t count = std::uint64_t{1} << width;
    for (std::uint64_t code = 0; code < count; ++code) {
        if (auto w = property(HFSet::from_code(code))) return {false, std::move(w), {}};
    }
    return {};
}

void formula_checks(Runner& run, const Catalog& cat, const SuiteOptions& o, const CheckOptions& closed) {
    const auto n = static_cast<std::int64_t>(o.nmax);
    const auto n1 = n + 1;

    auto count_is = [&](std::string_view name, std::size_t expected) {
        return [&cat, name, expected]() -> Outcome {
            std::size_t got = quantifier_count(cat.get(name).formula);
            if (got == expected) return {};
            return fail_note("expected " + std::to_string(expected) + " quantifiers, found " + std::to_string(got));
        };
    };
    run.run("quantifiers/AC**", "the five-quantifier sentence has exactly 5 quantifier occurrences", {},
            count_is("AC**", 5));
    run.run("quantifiers/AC-bar**", "the shortened sentence still has exactly 5 quantifier occurrences", {},
            count_is("AC-bar**", 5));
    run.run("quantifiers/C3", "the choice-set condition can be written with 3 quantifiers", {}, count_is("C3", 3));
    run.run("prefix/C3", "the prenex form of the 3-quantifier choice-set condition has prefix ∀∃∀", {}, [&]() -> Outcome {
        Trace t = prenex(cat.get("C3").formula);
        std::string p = prefix_pattern(t.end());
        if (p == "∀∃∀") return {};
        return fail_note("prefix of " + print(t.end(), PrintStyle::Unicode) + " is " + p);
    });

    auto valid = [&](std::string_view name, std::size_t size) {
        return [&cat, &closed, name, size]() {
            const Formula& f = cat.get(name).formula;
            return from_verdict(check_valid(f, size, closed), f);
        };
    };
    auto equiv = [&](std::string_view f, std::string_view g, std::size_t size) {
        return [&cat, &closed, f, g, size]() {
            const Formula& ff = cat.get(f).formula;
            const Formula& gg = cat.get(g).formula;
            return from_verdict(check_equiv(ff, gg, size, closed), Formula::biconditional(ff, gg));
        };
    };

    run.run("valid/choice-schema", "under its premise the three-quantifier choice reading is equivalent to the two-quantifier one",
            {{"nmax", n1}}, valid("choice-schema", o.nmax + 1));
    run.run("equiv/C~C-unique", "the choice-set condition agrees with its bounded unique-existence form", {{"nmax", n1}},
            equiv("C", "C-unique", o.nmax + 1));
    run.run("valid/hyp-strengthening", "nonempty pairwise disjoint elements each have a private element",
            {{"nmax", n1}}, valid("hyp-strengthening", o.nmax + 1));
    run.run("valid/AC*->AC", "the strengthened choice principle implies the axiom of choice without set axioms",
            {{"nmax", n}}, valid("AC*->AC", o.nmax));
    run.run("valid/disjoint-guards", "the two guarded disjuncts of AC** never hold together", {{"nmax", n}},
            valid("disjoint-guards", o.nmax));

    run.run("equiv/AC*~AC**", "AC* is logically equivalent to the five-quantifier sentence", {{"nmax", n}},
            equiv("AC*", "AC**", o.nmax));
    for (const auto& chain : cat.chain_names()) {
        auto members = cat.list_chain(chain);
        for (std::size_t i = 0; i + 1 < members.size(); ++i) {
            run.run("chain/" + chain + "/" + std::to_string(i) + "~" + std::to_string(i + 1),
                    "consecutive displays in the rewrite from AC* to AC** are equivalent", {{"nmax", n}},
                    equiv(members[i].name, members[i + 1].name, o.nmax));
        }
    }
    run.run("pipeline/AC*->AC**", "mechanical rewriting of AC* yields AC** through equivalence-preserving steps",
            {{"nmax", n}}, [&]() -> Outcome {
                Trace t = rewrite_to_five_quantifiers(cat.get("AC*").formula, cat.choice_schema());
                Outcome out;
                out.trace = t.steps();
                TraceVerdict tv = verify_trace(t, o.nmax, closed);
                if (tv.failed_step) {
                    const RewriteStep& s = t.steps()[*tv.failed_step];
                    out.passed = false;
                    out.witness = witness_from(std::get<Counterexample>(tv.verdict),
                                               Formula::biconditional(s.before, s.after));
                    out.witness->note = "step " + std::to_string(*tv.failed_step) + " (" +
                                        std::string{rule_name(s.rule)} + ") is not an equivalence";
                    return out;
                }
                const Formula& target = cat.get("AC**").formula;
                if (!(t.end() == target)) {
                    out.passed = false;
                    out.witness = Witness{};
                    out.witness->note = "rewriting ends in " + print(t.end(), PrintStyle::Unicode) +
                                        " instead of " + print(target, PrintStyle::Unicode);
                }
                return out;
            });

    run.run("equiv/AC**~AC-bar**", "replacing B by the shorter B-bar keeps the sentence equivalent", {{"nmax", n}},
            equiv("AC**", "AC-bar**", o.nmax));
    run.run("tokens/AC**-AC-bar**", "the shorter sentence saves 16 symbols", {}, [&]() -> Outcome {
        auto long_count = static_cast<long long>(token_count(cat.get("AC**").official_rendering));
        auto short_count = static_cast<long long>(token_count(cat.get("AC-bar**").official_rendering));
        if (long_count - short_count == 16) return {};
        return fail_note("symbol counts " + std::to_string(long_count) + " and " + std::to_string(short_count) +
                         " differ by " + std::to_string(long_count - short_count));
    });
}

void hf_checks(Runner& run, const Catalog& cat, const SuiteOptions& o) {
    const auto rank = static_cast<std::int64_t>(o.rank);
    const Params p{{"rank", rank}};
    const std::size_t k = o.rank;

    auto each_pair = [](HFSet x, const std::function<std::optional<Witness>(HFSet, HFSet)>& f) -> std::optional<Witness> {
        for (HFSet z : x.members()) {
            for (HFSet w : x.members()) {
                if (z != w) {
                    if (auto wit = f(z, w)) return wit;
                }
            }
        }
        return std::nullopt;
    };

    run.run("hf/phi-subset", "z_x ⊆ z for every z ∈ x", p, [&] {
        return sweep(k, [](HFSet x) -> std::optional<Witness> {
            for (HFSet z : x.members()) {
                if (!hf::is_subset(hf::phi(z, x), z)) {
                    return hf_witness({{"x", x}, {"z", z}, {"z_x", hf::phi(z, x)}}, "z_x is not a subset of z");
                }
            }
            return std::nullopt;
        });
    });
    run.run("hf/phi-misses-others", "z_x ∩ z' = ∅ for distinct z, z' ∈ x", p, [&] {
        return sweep(k, [&](HFSet x) {
            return each_pair(x, [x](HFSet z, HFSet w) -> std::optional<Witness> {
                if (hf::set_intersection(hf::phi(z, x), w).empty()) return std::nullopt;
                return hf_witness({{"x", x}, {"z", z}, {"z'", w}}, "z_x meets z'");
            });
        });
    });
    run.run("hf/phi-images-disjoint", "z_x ∩ z'_x = ∅ for distinct z, z' ∈ x", p, [&] {
        return sweep(k, [&](HFSet x) {
            return each_pair(x, [x](HFSet z, HFSet w) -> std::optional<Witness> {
                if (hf::set_intersection(hf::phi(z, x), hf::phi(w, x)).empty()) return std::nullopt;
                return hf_witness({{"x", x}, {"z", z}, {"z'", w}}, "z_x meets z'_x");
            });
        });
    });
    run.run("hf/phi-nonempty", "if every element of x has a private element then every z_x is nonempty", p, [&] {
        return sweep(k, [](HFSet x) -> std::optional<Witness> {
            if (!hf::sat_ach_star(x)) return std::nullopt;
            for (HFSet z : x.members()) {
                if (hf::phi(z, x).empty()) return hf_witness({{"x", x}, {"z", z}}, "z_x is empty");
            }
            return std::nullopt;
        });
    });
    run.run("hf/star-disjoint", "distinct elements of x* are disjoint", p, [&] {
        return sweep(k, [](HFSet x) -> std::optional<Witness> {
            if (hf::sat_ach2(hf::star(x))) return std::nullopt;
            return hf_witness({{"x", x}, {"x*", hf::star(x)}}, "x* has two overlapping elements");
        });
    });
    run.run("hf/ach-star-iff-star-nonempty", "x has private elements exactly when x* has no empty element", p, [&] {
        return sweep(k, [](HFSet x) -> std::optional<Witness> {
            if (hf::sat_ach_star(x) == hf::sat_ach1(hf::star(x))) return std::nullopt;
            return hf_witness({{"x", x}, {"x*", hf::star(x)}}, "the two conditions disagree");
        });
    });
    run.run("hf/hyp-strengthening", "nonempty pairwise disjoint elements each have a private element", p, [&] {
        return sweep(k, [](HFSet x) -> std::optional<Witness> {
            if (!hf::sat_ach1(x) || !hf::sat_ach2(x) || hf::sat_ach_star(x)) return std::nullopt;
            return hf_witness({{"x", x}}, "x is a disjoint family of nonempty sets without private elements");
        });
    });
    run.run("hf/phi-identity", "z_x = z ∩ ∪x* for every z ∈ x", p, [&] {
        return sweep(k, [](HFSet x) -> std::optional<Witness> {
            HFSet u = hf::union_of(hf::star(x));
            for (HFSet z : x.members()) {
                if (hf::phi(z, x) != hf::set_intersection(z, u)) {
                    return hf_witness({{"x", x}, {"z", z}}, "z_x differs from z ∩ ∪x*");
                }
            }
            return std::nullopt;
        });
    });
    run.run("hf/y-prime-identity", "{a ∈ y | ∃z ∈ x a ∈ z_x} = y ∩ ∪x* and it is a choice-set for x", p, [&] {
        return sweep(k, [](HFSet x) -> std::optional<Witness> {
            if (!hf::sat_ach_star(x)) return std::nullopt;
            HFSet xs = hf::star(x);
            auto y = hf::least_choice_set(xs);
            if (!y) return hf_witness({{"x", x}, {"x*", xs}}, "x* has no choice-set");
            HFSet comprehension;
            for (HFSet a : y->members()) {
                for (HFSet z : x.members()) {
                    if (hf::phi(z, x).contains(a)) comprehension = comprehension.with(a);
                }
            }
            HFSet yp = hf::set_intersection(*y, hf::union_of(xs));
            if (comprehension != yp) return hf_witness({{"x", x}, {"y", *y}}, "y' differs from y ∩ ∪x*");
            if (!hf::is_choice_set(yp, x)) return hf_witness({{"x", x}, {"y'", yp}}, "y' is not a choice-set for x");
            return std::nullopt;
        });
    });

    const Formula outside_choice = Formula::conjunction(not_member(var("y"), var("x")), cat.get("C").formula);
    run.run("hf/construct-choice-set", "every x with private elements has a choice-set that is not an element of x", p,
            [&] {
                hf::ConstructOptions co{o.faults.wrong_patch_branch};
                return sweep(k, [&](HFSet x) -> std::optional<Witness> {
                    if (!hf::sat_ach_star(x)) return std::nullopt;
                    try {
                        hf::construct_choice_set(x, co);
                    } catch (const hf::PostconditionError& e) {
                        const hf::ChoiceTrace& t = e.trace();
                        Witness w = hf_witness({{"x", x}, {"y", t.result}},
                                               std::string{e.what()} + " (branch " +
                                                   std::string{hf::branch_name(t.branch)} + ")");
                        w.formula = print(outside_choice);
                        return w;
                    }
                    return std::nullopt;
                });
            });

    run.run("hf/choice-set-ignores-empty", "y is a choice-set for x iff it is one for the nonempty elements of x", p,
            [&]() -> Outcome {
                const auto u = hf::v_universe(k).elements();
                for (HFSet x : u) {
                    HFSet nonempty = HFSet::from_code(x.code() & ~std::uint64_t{1});
                    for (HFSet y : u) {
                        if (hf::is_choice_set(y, x) != hf::is_choice_set(y, nonempty)) {
                            return {false, hf_witness({{"x", x}, {"y", y}}, "removing ∅ from x changes the answer"), {}};
                        }
                    }
                }
                return {};
            });
}

void bridge_checks(Runner& run, const Catalog& cat, const SuiteOptions& o) {
    const Params p{{"rank", static_cast<std::int64_t>(o.rank)}};
    const std::size_t k = std::min<std::size_t>(o.rank, 4);

    run.run("bridge/choice-set", "the formula C agrees with direct choice-set checking on V_k", p, [&]() -> Outcome {
        hf::HFStructure hs = hf::structure_of(k);
        const Formula& c = cat.get("C").formula;
        CompiledFormula compiled{c};
        for (HFSet x : hs.elements) {
            for (HFSet y : hs.elements) {
                std::vector<std::size_t> values{hs.index_of(x), hs.index_of(y)};
                if (compiled.evaluate(hs.structure, values) != hf::is_choice_set(y, x)) {
                    Witness w;
                    w.structure = hs.structure;
                    w.assignment = {{"x", values[0]}, {"y", values[1]}};
                    w.hf = {{"x", hf::to_string(x)}, {"y", hf::to_string(y)}};
                    w.note = "formula and set computation disagree";
                    return {false, std::move(w), {}};
                }
            }
        }
        return {};
    });
    for (std::string_view name : {"AC", "AC*", "AC**"}) {
        run.run("bridge/" + std::string{name}, std::string{name} + " holds in V_k with true membership", p,
                [&cat, name, k]() -> Outcome {
                    hf::HFStructure hs = hf::structure_of(k);
                    const Formula& f = cat.get(name).formula;
                    if (CompiledFormula{f}.evaluate(hs.structure, {})) return {};
                    Witness w;
                    w.structure = hs.structure;
                    w.formula = print(f);
                    w.note = std::string{name} + " is false in V_" + std::to_string(k);
                    return {false, std::move(w), {}};
                });
    }
}

void syntax_checks(Runner& run, const Catalog& cat, const SuiteOptions& o) {
    run.run("round-trip/random", "printing then parsing returns the same formula",
            {{"count", static_cast<std::int64_t>(o.random_formulas)}, {"seed", static_cast<std::int64_t>(o.seed)}},
            [&]() -> Outcome {
                RandomFormulaGenerator gen{o.seed};
                for (std::size_t i = 0; i < o.random_formulas; ++i) {
                    Formula f = gen.next();
                    for (PrintStyle style : {PrintStyle::Ascii, PrintStyle::Unicode}) {
                        std::string text = print(f, style);
                        if (!(parse(text) == f)) return fail_note("formula " + std::to_string(i) + " does not survive: " + text);
                    }
                }
                return {};
            });
    run.run("round-trip/catalog", "every catalog formula survives printing and parsing", {}, [&]() -> Outcome {
        for (const auto& name : cat.names()) {
            const Formula& f = cat.get(name).formula;
            for (PrintStyle style : {PrintStyle::Ascii, PrintStyle::Unicode}) {
                if (!(parse(print(f, style)) == f)) return fail_note(name + " does not survive printing");
            }
        }
        return {};
    });
    run.run("renderings/catalog", "every displayed rendering parses to its stored formula with the declared free variables",
            {}, [&]() -> Outcome {
                for (const auto& name : cat.names()) {
                    const CatalogEntry& e = cat.get(name);
                    if (!(parse(e.official_rendering) == e.formula)) {
                        return fail_note(name + ": rendering parses to " +
                                         print(parse(e.official_rendering), PrintStyle::Unicode));
                    }
                    std::set<Variable> declared(e.declared_free_vars.begin(), e.declared_free_vars.end());
                    if (declared != free_vars(e.formula)) return fail_note(name + ": free variables differ");
                }
                return {};
            });
}

json witness_to_json(const Witness& w) {
    json j = json::object();
    if (w.structure) {
        j["domain_size"] = w.structure->size();
        json edges = json::array();
        for (const auto& [i, k] : w.structure->edges()) edges.push_back({i, k});
        j["membership"] = std::move(edges);
    }
    if (w.structure || !w.assignment.empty()) {
        json a = json::object();
        for (const auto& [name, value] : w.assignment) a[name] = value;
        j["assignment"] = std::move(a);
    }
    if (!w.formula.empty()) j["formula"] = w.formula;
    if (!w.hf.empty()) {
        json h = json::object();
        for (const auto& [role, text] : w.hf) h[role] = text;
        j["hf"] = std::move(h);
    }
    if (!w.note.empty()) j["note"] = w.note;
    return j;
}

json steps_to_json(const std::vector<RewriteStep>& steps) {
    json out = json::array();
    for (const auto& s : steps) {
        out.push_back({{"rule", rule_name(s.rule)},
                       {"before", print(s.before, PrintStyle::Unicode)},
                       {"after", print(s.after, PrintStyle::Unicode)},
                       {"path", to_string(s.at)},
                       {"justification", s.justification}});
    }
    return out;
}

json report_to_json(const CheckReport& r) {
    json j;
    j["check"] = r.check;
    j["citation"] = r.citation;
    json params = json::object();
    for (const auto& [key, value] : r.params) params[key] = value;
    j["params"] = std::move(params);
    j["status"] = r.passed ? "pass" : "fail";
    if (r.witness) j["witness"] = witness_to_json(*r.witness);
    if (!r.trace.empty()) j["trace"] = steps_to_json(r.trace);
    j["millis"] = std::round(r.millis * 1000.0) / 1000.0;
    return j;
}

}  // namespace

SuiteResult verify_paper(const SuiteOptions& options) {
    if (options.nmax < 2) throw std::invalid_argument("verify-paper needs nmax >= 2");
    if (options.rank < 3 || options.rank > 4) throw std::invalid_argument("verify-paper needs rank 3 or 4");

    Catalog cat{CatalogFaults{options.faults.flip_quantifier, options.faults.drop_conjunct}};
    CheckOptions closed;
    closed.close_free = true;
    closed.jobs = options.jobs;

    Runner run{options};
    formula_checks(run, cat, options, closed);
    hf_checks(run, cat, options);
    bridge_checks(run, cat, options);
    syntax_checks(run, cat, options);
    return run.take();
}

std::string witness_json(const Witness& w) { return witness_to_json(w).dump(2); }

std::string trace_json(const Trace& t) {
    json j;
    j["start"] = print(t.start(), PrintStyle::Unicode);
    j["end"] = print(t.end(), PrintStyle::Unicode);
    j["steps"] = steps_to_json(t.steps());
    return j.dump(2);
}

std::string report_json(const CheckReport& r) { return report_to_json(r).dump(2); }

std::string suite_json(const SuiteResult& result, const SuiteOptions& options) {
    json j;
    json params;
    params["nmax"] = options.nmax;
    params["rank"] = options.rank;
    params["seed"] = options.seed;
    params["random_formulas"] = options.random_formulas;
    json faults = json::array();
    if (options.faults.flip_quantifier) faults.push_back("flip-quantifier");
    if (options.faults.drop_conjunct) faults.push_back("drop-conjunct");
    if (options.faults.wrong_patch_branch) faults.push_back("wrong-patch-branch");
    params["faults"] = std::move(faults);
    j["params"] = std::move(params);
    j["complete"] = result.complete;
    j["passed"] = result.passed();
    json reports = json::array();
    for (const auto& r : result.reports) reports.push_back(report_to_json(r));
    j["reports"] = std::move(reports);
    return j.dump(2);
}

Witness parse_witness_json(const std::string& text) {
    json j = json::parse(text);
    Witness w;
    if (j.contains("domain_size")) {
        FinStructure s{j.at("domain_size").get<std::size_t>()};
        for (const auto& edge : j.at("membership")) {
            auto i = edge.at(0).get<std::size_t>();
            auto k = edge.at(1).get<std::size_t>();
            if (i >= s.size() || k >= s.size()) throw ModelError("membership edge outside the domain");
            s.set_member(i, k, true);
        }
        w.structure = std::move(s);
    }
    if (j.contains("assignment")) {
        for (const auto& [name, value] : j.at("assignment").items()) w.assignment.emplace(name, value.get<std::size_t>());
    }
    if (j.contains("formula")) w.formula = j.at("formula").get<std::string>();
    if (j.contains("hf")) {
        for (const auto& [role, value] : j.at("hf").items()) w.hf.emplace(role, value.get<std::string>());
    }
    if (j.contains("note")) w.note = j.at("note").get<std::string>();
    return w;
}

}  // namespace qc
