#include <memory>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "anonpal/anonpal.hpp"

using namespace anonpal;

namespace {

EpistemicModel bench_model(std::int64_t states, std::int64_t agents) {
    return random_model(42, static_cast<std::size_t>(states),
                        static_cast<std::size_t>(agents), 3);
}

void BM_SafetyFixpoint(benchmark::State& state) {
    EpistemicModel m = bench_model(state.range(0), state.range(1));
    StateSet x = m.prop_extension("p");
    for (auto _ : state) benchmark::DoNotOptimize(safe_ext(m, x));
}

void BM_SafetyAssignmentOracle(benchmark::State& state) {
    EpistemicModel m = bench_model(state.range(0), 4);
    StateSet x = m.prop_extension("p");
    for (auto _ : state) benchmark::DoNotOptimize(safe_assignment(m, x));
}

void BM_Bisimilarity(benchmark::State& state) {
    EpistemicModel a = bench_model(state.range(0), 4);
    EpistemicModel b = bench_model(state.range(0), 4);
    for (auto _ : state) benchmark::DoNotOptimize(are_bisimilar(a, 0, b, 0));
}

void BM_AnonUpdate(benchmark::State& state) {
    EpistemicModel m = bench_model(state.range(0), state.range(1));
    Formula p = atom("p");
    for (auto _ : state) benchmark::DoNotOptimize(anon_update(m, p));
}

void BM_ModelCheckDynamic(benchmark::State& state) {
    EpistemicModel m = figures::fig4();
    Formula f = parse_formula("[safeanon p] K{c} K{d} q", m.roster());
    for (auto _ : state) benchmark::DoNotOptimize(extension(m, f));
}

void BM_Parse(benchmark::State& state) {
    AgentRoster roster{{"a", "b", "c", "d"}};
    std::string text = print_formula(
        random_formula(7, static_cast<std::size_t>(state.range(0)), Fragment::Full,
                       roster, {"p", "q", "r"}));
    for (auto _ : state) benchmark::DoNotOptimize(parse_formula(text, roster));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}

void BM_ReduceAnon(benchmark::State& state) {
    AgentRoster roster{{"a", "b", "c"}};
    Formula f = random_formula(11, static_cast<std::size_t>(state.range(0)),
                               Fragment::Anon, roster, {"p", "q"});
    for (auto _ : state) benchmark::DoNotOptimize(reduce_anon(f, roster));
}

BENCHMARK(BM_SafetyFixpoint)->Args({8, 3})->Args({16, 4})->Args({20, 5});
BENCHMARK(BM_SafetyAssignmentOracle)->Arg(5)->Arg(7)->Arg(9);
BENCHMARK(BM_Bisimilarity)->Arg(8)->Arg(16)->Arg(20);
BENCHMARK(BM_AnonUpdate)->Args({8, 3})->Args({16, 4})->Args({20, 5});
BENCHMARK(BM_ModelCheckDynamic);
BENCHMARK(BM_Parse)->Arg(4)->Arg(6);
BENCHMARK(BM_ReduceAnon)->Arg(3)->Arg(4);

} // namespace

BENCHMARK_MAIN();
