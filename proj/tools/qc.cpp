#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qc/catalog.hpp"
#include "qc/hf.hpp"
#include "qc/model.hpp"
#include "qc/parser.hpp"
#include "qc/report.hpp"
#include "qc/transforms.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Source {
    qc::Formula formula;
    // Catalog rendering or the text as read; token counts are taken from this.
    std::string text;
};

std::string read_stream(std::istream& in) {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Catalog name first, then a file path ("-" is stdin), then formula text.
Source resolve(const std::string& arg, bool literal) {
    if (!literal) {
        const auto& cat = qc::Catalog::standard();
        if (cat.contains(arg)) {
            const auto& e = cat.get(arg);
            return {e.formula, e.official_rendering};
        }
        if (arg == "-") {
            std::string text = read_stream(std::cin);
            return {qc::parse(text), text};
        }
        std::error_code ec;
        if (std::filesystem::is_regular_file(arg, ec)) {
            std::ifstream in(arg);
            if (!in) throw UsageError("cannot read " + arg);
            std::string text = read_stream(in);
            return {qc::parse(text), text};
        }
    }
    return {qc::parse(arg), arg};
}

qc::hf::HFSet read_set(const std::string& arg, std::size_t rank) {
    qc::hf::HFSet s = qc::hf::parse_hf(arg);
    if (s.rank() >= rank) {
        throw UsageError(qc::hf::to_string(s) + " has rank " + std::to_string(s.rank()) + ", not below " +
                         std::to_string(rank));
    }
    return s;
}

void print_verdict(const qc::Verdict& v, const qc::Formula& falsified) {
    if (qc::is_valid(v)) {
        std::cout << "ValidUpTo(" << std::get<qc::ValidUpTo>(v).nmax << ")\n";
    } else {
        std::cout << qc::witness_json(qc::witness_from(std::get<qc::Counterexample>(v), falsified)) << "\n";
    }
}

qc::CheckOptions check_options(std::size_t jobs, bool close, bool prune) {
    qc::CheckOptions o;
    o.jobs = jobs;
    o.close_free = close;
    o.prune_isomorphs = prune;
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Membership-formula toolkit: parse, transform and model-check (∈,=) formulas"};
    app.require_subcommand(1);

    bool literal = false;
    app.add_flag("--literal", literal, "Treat formula arguments as text, never as catalog names or files");

    std::string formula_arg;
    std::string second_arg;
    std::size_t nmax = 3;
    std::size_t jobs = 1;

    auto* parse_cmd = app.add_subcommand("parse", "Parse a formula and print it canonically");
    parse_cmd->add_option("formula", formula_arg, "Catalog name, file, - for stdin, or formula text")->required();
    bool parse_unicode = false;
    parse_cmd->add_flag("--unicode", parse_unicode, "Print with Unicode symbols");

    auto* print_cmd = app.add_subcommand("print", "Print a formula in Unicode notation");
    print_cmd->add_option("formula", formula_arg)->required();
    bool print_ascii = false;
    bool print_official = false;
    print_cmd->add_flag("--ascii", print_ascii, "Use ASCII keywords");
    print_cmd->add_flag("--official", print_official, "Print the catalog rendering instead of the canonical form");

    auto* count_cmd = app.add_subcommand("count", "Count quantifiers or symbols");
    count_cmd->add_option("formula", formula_arg)->required();
    bool count_quantifiers = false;
    bool count_tokens = false;
    auto* q_flag = count_cmd->add_flag("--quantifiers", count_quantifiers, "Quantifier occurrences");
    auto* t_flag = count_cmd->add_flag("--tokens", count_tokens, "Symbols of the written form");
    q_flag->excludes(t_flag);

    auto* prenex_cmd = app.add_subcommand("prenex", "Prenex form with its rewrite trace");
    prenex_cmd->add_option("formula", formula_arg)->required();
    std::size_t verify_n = 0;
    bool show_trace = false;
    prenex_cmd->add_option("--verify", verify_n, "Check every step up to this domain size");
    prenex_cmd->add_flag("--trace", show_trace, "Print the trace as JSON");

    auto* valid_cmd = app.add_subcommand("check-valid", "Search for a finite counterexample");
    valid_cmd->add_option("formula", formula_arg)->required();
    valid_cmd->add_option("--nmax", nmax, "Largest domain size")->check(CLI::Range(1, 8));
    valid_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
    bool close = false;
    bool prune = false;
    valid_cmd->add_flag("--close", close, "Quantify free variables universally");
    valid_cmd->add_flag("--prune-isomorphs", prune, "Skip structures isomorphic to an earlier one");

    auto* equiv_cmd = app.add_subcommand("check-equiv", "Check F ↔ G with free variables closed");
    equiv_cmd->add_option("f", formula_arg)->required();
    equiv_cmd->add_option("g", second_arg)->required();
    equiv_cmd->add_option("--nmax", nmax, "Largest domain size")->check(CLI::Range(1, 8));
    equiv_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));

    auto* catalog_cmd = app.add_subcommand("catalog", "List or show catalog formulas");
    catalog_cmd->require_subcommand(1);
    catalog_cmd->add_subcommand("list", "Names and summaries");
    auto* show_cmd = catalog_cmd->add_subcommand("show", "One entry in full");
    std::string show_name;
    show_cmd->add_option("name", show_name)->required();

    auto* hf_cmd = app.add_subcommand("hf", "Hereditarily finite set operations");
    hf_cmd->require_subcommand(1);
    std::size_t rank = 5;
    hf_cmd->add_option("--rank", rank, "Arguments must have rank below this")->check(CLI::Range(1, 5));
    std::string set_a;
    std::string set_b;
    auto* phi_cmd = hf_cmd->add_subcommand("phi", "z_x: the elements of z in no other element of x");
    phi_cmd->add_option("z", set_a)->required();
    phi_cmd->add_option("x", set_b)->required();
    auto* star_cmd = hf_cmd->add_subcommand("star", "x* = {z_x | z ∈ x}");
    star_cmd->add_option("x", set_a)->required();
    auto* choose_cmd = hf_cmd->add_subcommand("choose", "Construct a choice-set for x that is not in x");
    choose_cmd->add_option("x", set_a)->required();
    auto* hf_check_cmd = hf_cmd->add_subcommand("check", "Hypotheses on x, and whether y is a choice-set for x");
    hf_check_cmd->add_option("x", set_a)->required();
    hf_check_cmd->add_option("y", set_b);

    auto* suite_cmd = app.add_subcommand("verify-paper", "Run the whole verification suite");
    qc::SuiteOptions suite;
    std::string json_out;
    std::vector<std::string> faults;
    double budget_seconds = 0;
    suite_cmd->add_option("--nmax", suite.nmax, "Largest domain size")->check(CLI::Range(2, 5));
    suite_cmd->add_option("--rank", suite.rank, "Sweep subsets of V_rank")->check(CLI::Range(3, 4));
    suite_cmd->add_option("--jobs", suite.jobs, "Worker threads")->check(CLI::Range(1, 256));
    suite_cmd->add_option("--seed", suite.seed, "Seed for random formulas");
    suite_cmd->add_option("--random-formulas", suite.random_formulas, "How many random formulas to round-trip");
    suite_cmd->add_option("--json", json_out, "Write the reports here");
    suite_cmd->add_option("--inject-fault", faults, "flip-quantifier, drop-conjunct or wrong-patch-branch")
        ->check(CLI::IsMember({"flip-quantifier", "drop-conjunct", "wrong-patch-branch"}));
    suite_cmd->add_option("--budget", budget_seconds, "Stop starting checks after this many seconds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*parse_cmd) {
            std::cout << qc::print(resolve(formula_arg, literal).formula,
                                   parse_unicode ? qc::PrintStyle::Unicode : qc::PrintStyle::Ascii)
                      << "\n";
            return kOk;
        }
        if (*print_cmd) {
            Source s = resolve(formula_arg, literal);
            if (print_official) {
                std::cout << s.text << "\n";
            } else {
                std::cout << qc::print(s.formula, print_ascii ? qc::PrintStyle::Ascii : qc::PrintStyle::Unicode) << "\n";
            }
            return kOk;
        }
        if (*count_cmd) {
            if (!count_quantifiers && !count_tokens) throw UsageError("count needs --quantifiers or --tokens");
            Source s = resolve(formula_arg, literal);
            if (count_tokens) {
                std::cout << qc::token_count(s.text) << "\n";
            } else {
                std::cout << qc::quantifier_count(s.formula) << "\n";
            }
            return kOk;
        }
        if (*prenex_cmd) {
            qc::Trace t = qc::prenex(resolve(formula_arg, literal).formula);
            std::cout << qc::print(t.end(), qc::PrintStyle::Unicode) << "\n";
            if (show_trace) std::cout << qc::trace_json(t) << "\n";
            if (verify_n > 0) {
                qc::TraceVerdict tv = qc::verify_trace(t, verify_n, check_options(jobs, true, false));
                if (tv.failed_step) {
                    const auto& s = t.steps()[*tv.failed_step];
                    std::cout << "step " << *tv.failed_step << " (" << qc::rule_name(s.rule) << ") fails:\n";
                    print_verdict(tv.verdict, qc::Formula::biconditional(s.before, s.after));
                    return kFailed;
                }
                std::cout << "trace of " << t.steps().size() << " steps: ValidUpTo(" << verify_n << ")\n";
            }
            return kOk;
        }
        if (*valid_cmd) {
            qc::Formula f = resolve(formula_arg, literal).formula;
            if (!close && !qc::free_vars(f).empty()) {
                throw UsageError("the formula has free variables; pass --close to quantify them universally");
            }
            qc::Verdict v = qc::check_valid(f, nmax, check_options(jobs, close, prune));
            print_verdict(v, f);
            return qc::is_valid(v) ? kOk : kFailed;
        }
        if (*equiv_cmd) {
            qc::Formula f = resolve(formula_arg, literal).formula;
            qc::Formula g = resolve(second_arg, literal).formula;
            qc::Verdict v = qc::check_equiv(f, g, nmax, check_options(jobs, true, false));
            print_verdict(v, qc::Formula::biconditional(f, g));
            return qc::is_valid(v) ? kOk : kFailed;
        }
        if (*catalog_cmd) {
            const auto& cat = qc::Catalog::standard();
            if (*show_cmd) {
                const auto& e = cat.get(show_name);
                std::cout << "name: " << e.name << "\n"
                          << "rendering: " << e.official_rendering << "\n"
                          << "canonical: " << qc::print(e.formula, qc::PrintStyle::Unicode) << "\n"
                          << "ascii: " << qc::print(e.formula) << "\n"
                          << "quantifiers: " << qc::quantifier_count(e.formula) << "\n"
                          << "free:";
                for (const auto& v : e.declared_free_vars) std::cout << " " << v.name();
                std::cout << "\nsummary: " << e.summary << "\n";
                if (!e.note.empty()) std::cout << "note: " << e.note << "\n";
                return kOk;
            }
            for (const auto& name : cat.names()) std::cout << name << "\t" << cat.get(name).summary << "\n";
            return kOk;
        }
        if (*hf_cmd) {
            qc::hf::v_universe(rank);
            namespace hf = qc::hf;
            if (*phi_cmd) {
                std::cout << hf::to_string(hf::phi(read_set(set_a, rank), read_set(set_b, rank))) << "\n";
                return kOk;
            }
            if (*star_cmd) {
                std::cout << hf::to_string(hf::star(read_set(set_a, rank))) << "\n";
                return kOk;
            }
            if (*choose_cmd) {
                hf::HFSet x = read_set(set_a, rank);
                if (!hf::sat_ach_star(x)) {
                    std::cout << "x has an element without a private element; no construction\n";
                    return kFailed;
                }
                try {
                    auto t = hf::construct_choice_set(x);
                    std::cout << "x: " << hf::to_string(t.x) << "\n"
                              << "x*: " << hf::to_string(t.x_star) << "\n"
                              << "y: " << hf::to_string(t.y) << "\n"
                              << "y': " << hf::to_string(t.y_prime) << "\n"
                              << "branch: " << hf::branch_name(t.branch) << "\n"
                              << "result: " << hf::to_string(t.result) << "\n";
                    return kOk;
                } catch (const hf::PostconditionError& e) {
                    std::cout << e.what() << "\n";
                    return kFailed;
                }
            }
            hf::HFSet x = read_set(set_a, rank);
            std::cout << "nonempty elements: " << (hf::sat_ach1(x) ? "yes" : "no") << "\n"
                      << "pairwise disjoint: " << (hf::sat_ach2(x) ? "yes" : "no") << "\n"
                      << "private elements: " << (hf::sat_ach_star(x) ? "yes" : "no") << "\n";
            if (!set_b.empty()) {
                bool ok = hf::is_choice_set(read_set(set_b, rank), x);
                std::cout << "choice-set: " << (ok ? "yes" : "no") << "\n";
                return ok ? kOk : kFailed;
            }
            return kOk;
        }
        if (*suite_cmd) {
            for (const auto& f : faults) {
                if (f == "flip-quantifier") suite.faults.flip_quantifier = true;
                if (f == "drop-conjunct") suite.faults.drop_conjunct = true;
                if (f == "wrong-patch-branch") suite.faults.wrong_patch_branch = true;
            }
            if (budget_seconds > 0) {
                suite.budget = std::chrono::milliseconds{static_cast<long long>(budget_seconds * 1000)};
            }
            suite.on_report = [](const qc::CheckReport& r) {
                std::cout << (r.passed ? "PASS " : "FAIL ") << r.check << " (" << static_cast<long long>(r.millis)
                          << " ms)\n"
                          << std::flush;
            };
            qc::SuiteResult result = qc::verify_paper(suite);
            if (!json_out.empty()) {
                std::ofstream out(json_out);
                if (!out) throw UsageError("cannot write " + json_out);
                out << qc::suite_json(result, suite) << "\n";
            }
            std::size_t failed = 0;
            for (const auto& r : result.reports) failed += r.passed ? 0 : 1;
            std::cout << result.reports.size() << " checks, " << failed << " failed"
                      << (result.complete ? "" : ", stopped early by the time budget") << "\n";
            return result.passed() ? kOk : kFailed;
        }
    } catch (const qc::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const qc::UnknownNameError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const qc::hf::HFError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const qc::ModelError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
