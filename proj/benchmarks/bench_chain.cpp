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

#include "rgs/error_mc.hpp"
#include "rgs/rgs_build.hpp"

using namespace rgs;

namespace {

void bench_build_half_rgs(benchmark::State& state) {
    HalfRgsSpec spec{int(state.range(0)), TreeSpec{{4, 3}}};
    Rng rng(3);
    OutcomeSource bits = outcome_source_from(rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_half_rgs(spec, bits));
    }
    state.SetItemsProcessed(state.iterations() * spec.total_photons());
}

void bench_exact_trial(benchmark::State& state) {
    ChainConfig cfg;
    cfg.hops = int(state.range(0));
    cfg.spec = HalfRgsSpec{2, TreeSpec{{2, 2}}};
    cfg.loss_enabled = false;
    long t = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_trial(cfg, TrialMode::ExactTableau, t++));
    }
}

void bench_fast_trial(benchmark::State& state) {
    ChainConfig cfg = ChainConfig::ten_hop_preset();
    cfg.p_dep = 0.005;
    InnerErrorModel inner{1e-4, 1e-6, 1e-5, 1e-5};
    Rng rng(9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_fast_trial(cfg, inner, rng));
    }
}

void bench_tree_decode(benchmark::State& state) {
    TreeSpec spec{{16, 14, 1}};
    Rng rng(4);
    MeasurementTree scratch = MeasurementTree::from_spec(spec);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sample_tree_measurement(scratch, LogicalBasis::X, 0.005, 0.045,
                                    VoteMode::Recursive, rng));
    }
}

}  // namespace

BENCHMARK(bench_build_half_rgs)->Arg(1)->Arg(4)->Arg(18);
BENCHMARK(bench_exact_trial)->Arg(1)->Arg(3);
BENCHMARK(bench_fast_trial);
BENCHMARK(bench_tree_decode);
