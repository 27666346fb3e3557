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
//
// End-to-end acceptance suite. Each check prints one PASS/FAIL line; the
// process exits nonzero if any check fails. Statistical checks run on fixed
// seeds, so the whole suite is deterministic.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qtad/emit.hpp"
#include "qtad/oracle.hpp"
#include "qtad/protocol.hpp"

using namespace qtad;

namespace {

int g_failures = 0;
long g_norm_violations = 0;  // aggregated across every session this suite runs

void report(int number, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] %d. %s (%s)\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    if (!ok) ++g_failures;
}

Transcript run_and_track(const SessionConfig& config, std::uint64_t seed) {
    Transcript t = run_session(config, seed);
    g_norm_violations += t.counters.norm_bound_violations;
    return t;
}

// -- 1. The no-attack pair distribution equals the five-tuple table exactly.
void criterion_null_distribution() {
    auto start = std::chrono::steady_clock::now();
    ExactDistribution dist = oracle_pair_distribution(AttackStrategy::none());
    bool ok = dist.is_exact();
    const NullDistribution& null = exact_null();
    for (int i = 0; i < kPairTupleCount && ok; ++i) {
        PairRecord record{static_cast<std::uint8_t>((i >> 3) & 1),
                          static_cast<std::uint8_t>((i >> 2) & 1),
                          static_cast<std::uint8_t>((i >> 1) & 1),
                          static_cast<std::uint8_t>(i & 1)};
        ok = dist.probability_exact(record) == null.probability(record);
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                   start)
                         .count();
    ok = ok && seconds < 1.0;
    report(1, "null distribution reproduced exactly in rational arithmetic", ok,
           "1/4,1/4,1/4,1/8,1/8 and zero elsewhere; " + format_double12(seconds) + "s");
}

// -- 2. 1e5 simulated no-attack pairs match the table.
void criterion_monte_carlo_agreement() {
    auto start = std::chrono::steady_clock::now();
    SessionConfig config;
    config.message = random_message(100001, 1);  // cannot finish inside the budget
    config.n_min = 1000000000;                   // pure measurement run
    config.max_pairs = 100000;
    config.record_rounds = false;
    Transcript t = run_and_track(config, 0xAC5EED01);

    PairCounts counts;
    counts.support = t.counters.support_cells;
    counts.off_support = t.counters.off_support_pairs;
    counts.total = t.counters.pairs;
    TestVerdict verdict = step6_test(counts, 0.999);  // report the p-value only

    std::array<double, 16> empirical{};
    const NullDistribution& null = exact_null();
    for (int slot = 0; slot < 5; ++slot) {
        empirical[null.support[slot].first.index()] =
            static_cast<double>(counts.support[slot]) / static_cast<double>(counts.total);
    }
    double tv = total_variation(oracle_pair_distribution(AttackStrategy::none()).p,
                                empirical);
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                   start)
                         .count();
    bool ok = counts.total == 100000 && counts.off_support == 0 &&
              verdict.p_value > 0.001 && tv <= 0.01 && seconds < 30.0;
    report(2, "100000 Monte Carlo pairs match the null table", ok,
           "G-test p=" + format_double12(verdict.p_value) +
               ", TV=" + format_double12(tv) + ", " + format_double12(seconds) + "s");
}

// -- 3. Unattacked mirrored rounds never fire the destructive detector.
void criterion_interference_calibration() {
    ExactDistribution dist = oracle_pair_distribution(AttackStrategy::none());
    bool exact_zero =
        dist.is_exact() && *dist.mirror_d_exact == Rational(0) && dist.mirror_d < 1e-12;

    SessionConfig config;
    config.message = random_message(64, 2);
    config.n_min = 1000000000;
    long mirrored_rounds = 0;
    long d_fires = 0;
    std::uint64_t session = 0;
    while (mirrored_rounds < 100000) {
        Transcript t = run_and_track(config, mix64(0xCA11B, session++));
        for (const RoundOutcome& r : t.rounds) {
            if (!r.mirrored) continue;
            ++mirrored_rounds;
            if (r.detector.d_fired) ++d_fires;
        }
    }
    bool ok = exact_zero && d_fires == 0;
    report(3, "mirrored rounds: D probability 0 exactly, 0 fires in 100000 rounds", ok,
           "oracle mass " + format_double12(dist.mirror_d) + ", observed " +
               std::to_string(d_fires) + "/" + std::to_string(mirrored_rounds));
}

// -- 4. Full presence attack: off-support mass 3/8; >=99% abort in 10 pairs.
void criterion_detection_power() {
    ExactDistribution dist =
        oracle_pair_distribution(AttackStrategy::projective_presence(1.0));
    bool mass_ok = dist.is_exact() && dist.off_support_mass_exact() == Rational(3, 8);

    SessionConfig config;
    config.message = random_message(200, 3);
    config.attack = AttackStrategy::projective_presence(1.0);
    config.record_rounds = false;
    int within_10 = 0;
    const int sessions = 1000;
    for (int i = 0; i < sessions; ++i) {
        Transcript t = run_and_track(config, mix64(2026, i));
        if (t.verdict == Verdict::Aborted && (t.abort_round + 1) / 2 <= 10) ++within_10;
    }
    bool ok = mass_ok && within_10 >= 990;
    report(4, "projective q=1: off-support mass 3/8; >=99% abort within 10 pairs", ok,
           "exact mass " + to_string(dist.off_support_mass_exact()) + ", aborted " +
               std::to_string(within_10) + "/1000");
}

// -- 5. False positives stay below 2% over 1000 64-pair no-attack sessions.
void criterion_false_positive_control() {
    SessionConfig config;
    config.message = random_message(80, 4);
    config.alpha = 0.01;
    config.n_min = 8;
    config.max_pairs = 64;
    config.record_rounds = false;
    int aborted = 0;
    bool prefixes_ok = true;
    const int sessions = 1000;
    for (int i = 0; i < sessions; ++i) {
        Transcript t = run_and_track(config, mix64(0xFA15E, i));
        if (t.verdict == Verdict::Aborted) ++aborted;
        prefixes_ok = prefixes_ok &&
                      t.delivered_message ==
                          config.message.substr(0, t.delivered_message.size());
    }
    bool ok = aborted <= 20 && prefixes_ok;
    report(5, "no-attack abort rate <= 0.02 (alpha 0.01, n_min 8, 64 pairs)", ok,
           std::to_string(aborted) + "/1000 aborted");
}

// -- 6. Channel-local measurement theory on random families.
void criterion_remark_one_suite() {
    auto start = std::chrono::steady_clock::now();
    Mt64Stream rng(0x0B5E55);
    bool constrained_ok = true;
    for (int i = 0; i < 1000 && constrained_ok; ++i) {
        int bit = i % 2;
        MeasurementFamily fam = random_nondisturbing_local_family(rng, bit);
        constrained_ok =
            is_nondisturbing(fam, prepare_and_split(bit)) &&
            distinguishability(fam, prepare_and_split(bit), StateVector::vacuum()) < 1e-9;
    }
    bool contrapositive_ok = true;
    int informative = 0;
    long attempts = 0;
    while (informative < 1000 && contrapositive_ok) {
        ++attempts;
        MeasurementFamily fam = random_local_family(rng, 2 + informative % 4);
        if (distinguishability(fam, prepare_and_split(0), StateVector::vacuum()) <= 0.1) {
            continue;
        }
        ++informative;
        contrapositive_ok = !is_nondisturbing(fam, prepare_and_split(0));
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                   start)
                         .count();
    bool ok = constrained_ok && contrapositive_ok && seconds < 10.0;
    report(6, "eigenvector condition <=> indistinguishable from vacuum (1000+1000)", ok,
           std::to_string(attempts) + " sampled families, " + format_double12(seconds) +
               "s");
}

// -- 7. Channel mass never exceeds 1/2 at honest transits, suite-wide.
void criterion_norm_bound() {
    // Exercise the return leg explicitly under a weak both-transit attack.
    SessionConfig config;
    config.message = random_message(32, 6);
    config.attack = AttackStrategy::weak_presence(0.6, TransitPolicy::BothTransits);
    config.record_rounds = false;
    for (int i = 0; i < 200; ++i) run_and_track(config, mix64(0x0B0D17, i));

    report(7, "channel expectation <= 0.5 + 1e-9 at every honest transit",
           g_norm_violations == 0,
           std::to_string(g_norm_violations) + " violations across all sessions");
}

// -- 8. Delivery correctness and the 3.5 rounds-per-bit recurrence.
void criterion_delivery_and_throughput() {
    // Delivery: the channel is perfect, so with the sequential test gated
    // off every session ends Completed with the exact input message.
    SessionConfig config;
    config.n_min = 1000000000;
    config.record_rounds = false;
    bool delivered_ok = true;
    for (int i = 0; i < 1000 && delivered_ok; ++i) {
        config.message = random_message(16, 1000 + i);
        Transcript t = run_and_track(config, mix64(0xDE117E4, i));
        delivered_ok = t.verdict == Verdict::Completed &&
                       t.delivered_message == config.message;
    }

    Rational recurrence = expected_rounds_per_bit_exact(AttackStrategy::none());
    bool recurrence_ok = recurrence == Rational(7, 2);

    config.message = random_message(100000, 8);
    Transcript big = run_and_track(config, 0x3C0DE);
    double mean_latency = big.counters.delivery_latency_sum /
                          static_cast<double>(big.counters.delivery_latency_count);
    bool throughput_ok = big.verdict == Verdict::Completed &&
                         std::abs(mean_latency - 3.5) <= 0.035;

    report(8, "delivery correct for 1000 seeds; rounds per bit 3.5 +- 1% at 1e5 bits",
           delivered_ok && recurrence_ok && throughput_ok,
           "recurrence " + to_string(recurrence) + ", measured " +
               format_double12(mean_latency));
}

// -- 9. Byte-identical results for identical experiment invocations.
void criterion_determinism() {
    std::filesystem::path base =
        std::filesystem::temp_directory_path() / "qtad_acceptance_det";
    std::filesystem::remove_all(base);
    std::filesystem::create_directories(base);

    std::string cli = QTAD_CLI_PATH;
    std::string flags =
        " experiment --bits 48 --attack projective --sweep-q 0 0.5 1"
        " --sessions 120 --max-pairs 64 --seed 97 --threads 2 --out ";
    bool ok = true;
    for (const char* run : {"a", "b"}) {
        std::string command =
            cli + flags + (base / run).string() + " > " + (base / run).string() + ".log";
        ok = ok && std::system(command.c_str()) == 0;
    }
    for (const char* name : {"sessions.jsonl", "aggregate.csv", "curves.csv"}) {
        std::ifstream a(base / "a" / name, std::ios::binary);
        std::ifstream b(base / "b" / name, std::ios::binary);
        std::ostringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        ok = ok && a.good() && b.good() && sa.str() == sb.str() && !sa.str().empty();
    }
    report(9, "identical experiment invocations emit byte-identical files", ok,
           "sessions.jsonl, aggregate.csv, curves.csv");
}

}  // namespace

int main() {
    criterion_null_distribution();
    criterion_monte_carlo_agreement();
    criterion_interference_calibration();
    criterion_detection_power();
    criterion_false_positive_control();
    criterion_remark_one_suite();
    criterion_norm_bound();
    criterion_delivery_and_throughput();
    criterion_determinism();

    if (g_failures == 0) {
        std::printf("all 9 acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
