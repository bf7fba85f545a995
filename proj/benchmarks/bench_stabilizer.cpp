// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "rgs/graph_state.hpp"
#include "rgs/pauli.hpp"
#include "rgs/rng.hpp"

using namespace rgs;

namespace {

GraphState random_graph(size_t n, Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    for (size_t u = 0; u < n; ++u) {
        for (size_t v = u + 1; v < n; ++v) {
            if (rng.bernoulli(0.3)) edges.emplace_back(int(u), int(v));
        }
    }
    return GraphState::from_edges(int(n), edges);
}

void bench_tableau_measure(benchmark::State& state) {
    size_t n = size_t(state.range(0));
    Rng rng(7);
    for (auto _ : state) {
        state.PauseTiming();
        auto t = StabilizerTableau::plus_state(n);
        for (size_t i = 0; i + 1 < n; ++i) t.apply(Gate::CZ, i, i + 1);
        state.ResumeTiming();
        for (size_t q = 0; q < n; ++q) {
            t.measure_forced(PauliOperator::single(n, q, Pauli::Z), rng.bit());
        }
        benchmark::DoNotOptimize(t);
    }
    state.SetItemsProcessed(state.iterations() * long(n));
}

void bench_canonical_form(benchmark::State& state) {
    size_t n = size_t(state.range(0));
    Rng rng(11);
    auto g = random_graph(n, rng);
    auto t = g.to_tableau();
    for (auto _ : state) {
        benchmark::DoNotOptimize(t.canonical_form());
    }
}

void bench_graph_measurements(benchmark::State& state) {
    size_t n = size_t(state.range(0));
    Rng rng(23);
    for (auto _ : state) {
        state.PauseTiming();
        auto g = random_graph(n, rng);
        auto vs = g.vertices();
        state.ResumeTiming();
        OutcomeSource bits = outcome_source_from(rng);
        for (int v : vs) {
            if (!g.alive(v)) continue;
            g.measure_vertex(v, static_cast<Pauli>(1 + rng.below(3)), bits);
        }
        benchmark::DoNotOptimize(g);
    }
    state.SetItemsProcessed(state.iterations() * long(n));
}

}  // namespace

BENCHMARK(bench_tableau_measure)->Arg(16)->Arg(64)->Arg(128);
BENCHMARK(bench_canonical_form)->Arg(16)->Arg(64)->Arg(128);
BENCHMARK(bench_graph_measurements)->Arg(16)->Arg(64)->Arg(256);

BENCHMARK_MAIN();
