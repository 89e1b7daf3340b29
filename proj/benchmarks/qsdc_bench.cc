// Copyright 2026 The QSDC Authors
//
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

#include <string>
#include <vector>

#include "qsdc/protocols/fair.h"
#include "qsdc/protocols/hiding.h"
#include "qsdc/protocols/sdc_basic.h"
#include "qsdc/protocols/teleport.h"
#include "qsdc/qcore/state.h"

namespace {

using namespace qsdc;
using namespace qsdc::protocols;

void BM_Qft(benchmark::State& st) {
    const auto width = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) {
        FactoredState s;
        s.allocate_register("A", width);
        s.allocate_register("B", width);
        s.apply_shift("A", 1);
        const std::vector<std::string> regs{"A", "B"};
        s.apply_qft(regs, false);
        benchmark::DoNotOptimize(s.num_qubits());
    }
}
BENCHMARK(BM_Qft)->Arg(2)->Arg(4)->Arg(6);

void BM_PairwiseDcnot(benchmark::State& st) {
    const auto width = static_cast<std::size_t>(st.range(0));
    FactoredState s;
    s.allocate_register("A", width);
    s.allocate_register("B", width);
    s.apply_rotation("A", 1);
    for (auto _ : st) {
        s.apply_pairwise("A", "B", PairOp::kDcnot);
    }
}
BENCHMARK(BM_PairwiseDcnot)->Arg(2)->Arg(8);

void BM_SdcBasic(benchmark::State& st) {
    const auto family = static_cast<Family>(st.range(0));
    std::uint64_t seed = 0;
    for (auto _ : st) {
        const SdcResult r = run_sdc_basic({family, Locking::kDcnot, 4, seed++}, {1, 2}, {3, 0});
        benchmark::DoNotOptimize(r.bob_decoded);
    }
}
BENCHMARK(BM_SdcBasic)->Arg(static_cast<int>(Family::kBell))->Arg(static_cast<int>(Family::kGhz));

void BM_FairRun(benchmark::State& st) {
    FairConfig cfg;
    cfg.n = 2;
    cfg.s = static_cast<std::size_t>(st.range(0));
    cfg.b = {1, 2};
    cfg.c = {3, 0};
    cfg.adversary = {CharlieStrategy::kRandomState, 1};
    for (auto _ : st) {
        const FairResult r = run_sdc_fair(cfg);
        benchmark::DoNotOptimize(r.completed);
        cfg.seed++;
    }
}
BENCHMARK(BM_FairRun)->Arg(4)->Arg(8);

void BM_Teleport(benchmark::State& st) {
    RandomSource rng(1);
    TeleportConfig cfg;
    cfg.M = static_cast<std::size_t>(st.range(0));
    cfg.N = 4;
    for (std::size_t t = 0; t < cfg.M; t++) cfg.inputs.push_back(random_qunit(rng, cfg.N));
    for (auto _ : st) {
        const TeleportResult r = run_teleport(cfg);
        benchmark::DoNotOptimize(r.fidelities);
        cfg.seed++;
    }
}
BENCHMARK(BM_Teleport)->Arg(2)->Arg(4);

void BM_VerifyHiding(benchmark::State& st) {
    for (auto _ : st) {
        const HidingReport h = verify_locking_hiding(Family::kW, Locking::kQft2, 2);
        benchmark::DoNotOptimize(h.max_distance);
    }
}
BENCHMARK(BM_VerifyHiding)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
