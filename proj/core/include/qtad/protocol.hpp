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

#pragma once

#include <array>
#include <string>
#include <vector>

#include "qtad/adversary.hpp"
#include "qtad/optics.hpp"
#include "qtad/stats.hpp"

namespace qtad {

/// When the sequential hypothesis test runs within a session. Off-support
/// pairs abort immediately at any even round under either policy.
///  - Doubling (default): the G-test runs when the pair count reaches
///    n_min * 2^j, at level alpha / 2^(j+1). The spent levels sum below
///    alpha, so the session-wide false-positive rate stays below alpha for
///    any horizon (measured 0.009-0.010 at alpha = 0.01).
///  - EveryEven: the G-test runs at every even round once n_min pairs exist,
///    each at the full alpha. No multiple-testing correction: the
///    session-wide false-positive rate grows with the horizon (measured
///    0.095 at alpha = 0.01 over 64 pairs) and tends to one as the horizon
///    grows.
enum class CheckpointPolicy { Doubling, EveryEven };

struct SessionConfig {
    std::string message;                   // bit string "0110..."
    AttackStrategy attack;                 // Tracy's behavior
    double alpha = 0.01;                   // Step-6 rejection level
    long n_min = 8;                        // minimum pairs before the G-test
    CheckpointPolicy checkpoint = CheckpointPolicy::Doubling;
    bool payload_check = false;            // compare detected bit to sent bit
    double delta = 1.0;                    // round-trip time, timestamps only
    double t1 = 0.0;                       // agreed transmission start
    long max_pairs = 0;                    // 0 = run until the message is done
    bool record_rounds = true;             // keep per-round outcomes

    void validate() const;
};

struct AliceState {
    std::string message;
    int next_bit = 1;           // i, 1-based index of the bit being sent
    long rounds_completed = 0;  // a, the transmission counter
    bool payload_check = false;

    bool done() const { return next_bit > static_cast<int>(message.size()); }
    int current_bit() const { return message[next_bit - 1] == '1' ? 1 : 0; }
};

struct BobState {
    bool b = true;   // true while the first round of a pair is processed
    bool r = false;  // mirror the current package iff r
    std::string received;
};

struct RoundOutcome {
    long round_index = 0;    // a after this round completed (1-based)
    int bit_index = 0;       // which message bit the round carried
    int bit_sent = 0;
    bool mirrored = false;
    BobOutcome bob = BobOutcome::Mirrored;
    DetectorEvent detector;
    TracyObservation tracy_outbound;
    TracyObservation tracy_inbound;
    bool bit_delivered = false;
    bool payload_mismatch = false;
    double timestamp = 0.0;  // t1 + (a-1) * delta, the transmission time
};

/// Bob's Steps 2-4. Consumes one coin draw only at the first round of a
/// pair; the second round is forced to the opposite device. Returns the
/// mirror decision and the advanced state.
struct BobDecision {
    bool mirror;
    BobState bob;
};
BobDecision bob_decide(const BobState& bob, RandomStream& rng);

/// One full transmission round: prepare and split, outbound transit, Bob's
/// device, (return transit when mirrored), Alice's interference experiment,
/// and the retransmission rule (the bit index advances only when both
/// detectors stay silent). Throws ProtocolCompleteError when no bit is left.
struct RoundResult {
    RoundOutcome outcome;
    AliceState alice;
    BobState bob;
};
RoundResult run_round(const AliceState& alice, const BobState& bob,
                      const AttackStrategy& attack, RandomStream& rng,
                      const SessionConfig& config);

enum class Verdict { Completed, Aborted, Truncated };
enum class AbortReason { None, OffSupport, FrequencyDeviation, PayloadMismatch };

/// Everything a session accumulates besides the per-round list; filled in
/// even when round recording is off.
struct SessionCounters {
    long rounds = 0;
    long pairs = 0;
    std::array<long, 5> support_cells{};
    long off_support_pairs = 0;
    long tracy_found_events = 0;
    long norm_bound_violations = 0;
    long bits_delivered = 0;
    double delivery_latency_sum = 0.0;  // rounds from pair-aligned start
    long delivery_latency_count = 0;
    double last_p_value = 1.0;
    long checkpoints_run = 0;
};

struct Transcript {
    std::vector<RoundOutcome> rounds;  // empty when recording is off
    Verdict verdict = Verdict::Completed;
    AbortReason abort_reason = AbortReason::None;
    long abort_round = 0;  // 0 unless aborted
    std::string delivered_message;
    SessionCounters counters;
};

/// Runs rounds until the message is delivered, the Step-6 test rejects at an
/// even-round checkpoint, or the optional pair budget runs out.
/// Deterministic given (config, seed).
Transcript run_session(const SessionConfig& config, std::uint64_t seed);

/// Random bit string of length n; the message derived from `seed` is fixed
/// by mix64(seed, 0x6D7367) ("msg").
std::string random_message(int n, std::uint64_t seed);

}  // namespace qtad
