// Copyright 2026 The qtad Authors
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

#include "qtad/oracle.hpp"
#include "qtad/protocol.hpp"

namespace {

using namespace qtad;

void BM_Measure(benchmark::State& state) {
    StateVector split = prepare_and_split(0);
    Mt64Stream rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(measure(split, presence_family(), rng.next()));
    }
}
BENCHMARK(BM_Measure);

void BM_RunRound(benchmark::State& state) {
    SessionConfig config;
    config.message = "0";
    AliceState alice{config.message, 1, 0, false};
    BobState bob;
    Mt64Stream rng(2);
    for (auto _ : state) {
        RoundResult r = run_round(alice, bob, AttackStrategy::none(), rng, config);
        bob = r.bob;
        bob.received.clear();  // stop unbounded growth across iterations
        benchmark::DoNotOptimize(r.outcome);
    }
}
BENCHMARK(BM_RunRound);

void BM_Session64Pairs(benchmark::State& state) {
    SessionConfig config;
    config.message = random_message(200, 1);
    config.max_pairs = 64;
    config.record_rounds = false;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_session(config, mix64(9, seed++)));
    }
}
BENCHMARK(BM_Session64Pairs);

void BM_SessionUnderAttack(benchmark::State& state) {
    SessionConfig config;
    config.message = random_message(200, 1);
    config.attack = AttackStrategy::projective_presence(1.0);
    config.record_rounds = false;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_session(config, mix64(10, seed++)));
    }
}
BENCHMARK(BM_SessionUnderAttack);

void BM_OracleExact(benchmark::State& state) {
    AttackStrategy attack = AttackStrategy::projective_presence(0.25);
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle_pair_distribution(attack));
    }
}
BENCHMARK(BM_OracleExact);

void BM_Step6Test(benchmark::State& state) {
    PairCounts counts;
    counts.support = {251, 248, 252, 124, 125};
    counts.total = 1000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(step6_test(counts, 0.01));
    }
}
BENCHMARK(BM_Step6Test);

void BM_RandomLocalFamily(benchmark::State& state) {
    Mt64Stream rng(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(random_local_family(rng, 3));
    }
}
BENCHMARK(BM_RandomLocalFamily);

}  // namespace

BENCHMARK_MAIN();
