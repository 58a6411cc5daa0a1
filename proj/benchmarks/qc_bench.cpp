#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>
#include <vector>

#include "qc/catalog.hpp"
#include "qc/hf.hpp"
#include "qc/model.hpp"
#include "qc/parser.hpp"
#include "qc/random_formula.hpp"
#include "qc/transforms.hpp"

using namespace qc;

namespace {

const Formula& entry(const char* name) { return Catalog::standard().get(name).formula; }

void BM_CheckEquivAcStar(benchmark::State& state) {
    CheckOptions o;
    o.jobs = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_equiv(entry("AC*"), entry("AC**"), 3, o));
    }
}
BENCHMARK(BM_CheckEquivAcStar)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CheckValidSizeFour(benchmark::State& state) {
    CheckOptions o;
    o.close_free = true;
    o.prune_isomorphs = state.range(0) != 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_valid(entry("hyp-strengthening"), 4, o));
    }
}
BENCHMARK(BM_CheckValidSizeFour)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CompiledEvaluate(benchmark::State& state) {
    CompiledFormula compiled{entry("AC**")};
    std::vector<FinStructure> structures;
    for (std::uint64_t code = 0; code < 512; ++code) structures.push_back(FinStructure::from_code(3, code));
    std::vector<std::size_t> scratch;
    for (auto _ : state) {
        for (const auto& s : structures) benchmark::DoNotOptimize(compiled.evaluate(s, {}, scratch));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(structures.size()));
}
BENCHMARK(BM_CompiledEvaluate);

void BM_ReferenceEvaluate(benchmark::State& state) {
    const Formula& f = entry("AC**");
    std::vector<FinStructure> structures;
    for (std::uint64_t code = 0; code < 512; ++code) structures.push_back(FinStructure::from_code(3, code));
    for (auto _ : state) {
        for (const auto& s : structures) benchmark::DoNotOptimize(evaluate(s, {}, f));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(structures.size()));
}
BENCHMARK(BM_ReferenceEvaluate);

void BM_HFSweep(benchmark::State& state) {
    for (auto _ : state) {
        std::size_t built = 0;
        for (std::uint64_t c = 0; c < 65536; ++c) {
            hf::HFSet x = hf::HFSet::from_code(c);
            if (hf::sat_ach_star(x)) built += hf::construct_choice_set(x).result.size();
        }
        benchmark::DoNotOptimize(built);
    }
}
BENCHMARK(BM_HFSweep)->Unit(benchmark::kMillisecond);

void BM_ParsePrint(benchmark::State& state) {
    RandomFormulaGenerator gen{7};
    std::vector<std::string> texts;
    for (int i = 0; i < 1000; ++i) texts.push_back(print(gen.next()));
    for (auto _ : state) {
        for (const auto& t : texts) benchmark::DoNotOptimize(print(parse(t)));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(texts.size()));
}
BENCHMARK(BM_ParsePrint);

void BM_RewritePipeline(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(rewrite_to_five_quantifiers(entry("AC*"), Catalog::standard().choice_schema()));
    }
}
BENCHMARK(BM_RewritePipeline);

}  // namespace

BENCHMARK_MAIN();
