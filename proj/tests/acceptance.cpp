#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qc/catalog.hpp"
#include "qc/hf.hpp"
#include "qc/parser.hpp"
#include "qc/report.hpp"
#include "qc/transforms.hpp"

using namespace qc;

namespace {

struct Criterion {
    int number;
    std::string title;
    std::vector<std::string> checks;
    std::function<std::string()> extra;
};

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

std::string quantifier_counts() {
    const Catalog& cat = Catalog::standard();
    if (quantifier_count(cat.get("AC**").formula) != 5) return "AC** does not have 5 quantifiers";
    if (quantifier_count(cat.get("AC-bar**").formula) != 5) return "AC-bar** does not have 5 quantifiers";
    if (quantifier_count(cat.get("C3").formula) != 3) return "C3 does not have 3 quantifiers";
    if (prefix_pattern(prenex(cat.get("C3").formula).end()) != "∀∃∀") return "prenex C3 prefix is not ∀∃∀";
    return {};
}

std::string token_delta() {
    const Catalog& cat = Catalog::standard();
    auto full = token_count(cat.get("AC**").official_rendering);
    auto shorter = token_count(cat.get("AC-bar**").official_rendering);
    if (full - shorter != 16) return "token delta is " + std::to_string(full - shorter);
    return {};
}

std::string fault_sensitivity() {
    struct Fault {
        const char* name;
        SuiteFaults faults;
    };
    const std::vector<Fault> faults{{"flip-quantifier", {.flip_quantifier = true}},
                                    {"drop-conjunct", {.drop_conjunct = true}},
                                    {"wrong-patch-branch", {.wrong_patch_branch = true}}};
    for (const auto& fault : faults) {
        SuiteOptions o;
        o.random_formulas = 200;
        o.faults = fault.faults;
        SuiteResult r = verify_paper(o);
        bool caught = false;
        for (const auto& report : r.reports) {
            if (report.passed || !report.witness) continue;
            Witness back = parse_witness_json(witness_json(*report.witness));
            if (verify_witness(back)) {
                std::printf("  %s caught by %s\n", fault.name, report.check.c_str());
                caught = true;
                break;
            }
        }
        if (!caught) return std::string{fault.name} + " produced no verifiable witness";
    }
    return {};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "quantifier counts and the ∀∃∀ prefix", {"quantifiers/", "prefix/"}, quantifier_counts},
        {2, "choice schema instance valid up to size 4", {"valid/choice-schema"}, nullptr},
        {3, "hypothesis strengthening, AC* -> AC and disjoint guards", {"valid/hyp-strengthening", "valid/AC*->AC", "valid/disjoint-guards"}, nullptr},
        {4, "AC* ~ AC**, both rewrite chains and the verified pipeline", {"equiv/AC*~AC**", "chain/", "pipeline/"}, nullptr},
        {5, "AC** ~ AC-bar** and the 16-symbol saving", {"equiv/AC**~AC-bar**", "tokens/"}, token_delta},
        {6, "sweep over all subsets of V_4", {"hf/"}, nullptr},
        {7, "formula and set computations agree on V_4", {"bridge/"}, nullptr},
        {8, "parser round trips", {"round-trip/", "renderings/"}, nullptr},
        {9, "injected faults are detected with verifiable witnesses", {}, fault_sensitivity},
    };

    SuiteOptions defaults;
    SuiteResult suite = verify_paper(defaults);

    int failed = 0;
    for (const auto& c : criteria) {
        std::vector<std::string> problems;
        std::size_t matched = 0;
        for (const auto& prefix : c.checks) {
            std::size_t hits = 0;
            for (const auto& report : suite.reports) {
                if (!starts_with(report.check, prefix)) continue;
                ++hits;
                if (!report.passed) problems.push_back(report.check + " failed");
            }
            if (hits == 0) problems.push_back(prefix + " did not run");
            matched += hits;
        }
        if (c.extra) {
            std::string p = c.extra();
            if (!p.empty()) problems.push_back(p);
        }
        bool ok = problems.empty() && suite.complete;
        if (!ok) ++failed;
        std::printf("%s criterion %d: %s", ok ? "PASS" : "FAIL", c.number, c.title.c_str());
        if (!c.checks.empty()) std::printf(" (%zu suite checks)", matched);
        std::printf("\n");
        for (const auto& p : problems) std::printf("  %s\n", p.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
