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

#include "qtad/protocol.hpp"

#include <cmath>

namespace qtad {

void SessionConfig::validate() const {
    if (message.empty()) throw ConfigError("message must contain at least one bit");
    for (char c : message) {
        if (c != '0' && c != '1') throw ConfigError("message must be a 0/1 string");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    if (n_min < 1) throw ConfigError("n_min must be at least 1");
    if (max_pairs < 0) throw ConfigError("max_pairs must be non-negative");
    if (!std::isfinite(delta) || !std::isfinite(t1)) {
        throw ConfigError("delta and t1 must be finite");
    }
    if (!(attack.q >= 0.0 && attack.q <= 1.0) ||
        !(attack.eta >= 0.0 && attack.eta <= 1.0)) {
        throw ConfigError("attack parameters must lie in [0, 1]");
    }
}

BobDecision bob_decide(const BobState& bob, RandomStream& rng) {
    BobState next = bob;
    if (next.b) next.r = rng.next() < 0.5;
    bool mirror = next.r;
    next.b = !next.b;
    next.r = !next.r;
    return BobDecision{mirror, next};
}

namespace {

// The half-mass bound applies to the split produced by the honest devices.
// Once an in-round detection has collapsed the package fully onto the
// channel, the returning state legitimately carries mass 1 there, so the
// return-leg check is skipped after an outbound "found".
void check_norm_bound(const StateVector& s, SessionCounters* counters) {
    if (counters == nullptr) return;
    if (expectation(s, channel_projector()) > 0.5 + kAlgebraTol) {
        ++counters->norm_bound_violations;
    }
}

RoundResult run_round_impl(const AliceState& alice, const BobState& bob,
                           const AttackStrategy& attack, RandomStream& rng,
                           const SessionConfig& config, SessionCounters* counters) {
    if (alice.done()) throw ProtocolCompleteError("message already delivered");

    AliceState next_alice = alice;
    RoundOutcome outcome;
    outcome.bit_index = alice.next_bit;
    outcome.bit_sent = alice.current_bit();
    next_alice.rounds_completed = alice.rounds_completed + 1;
    outcome.round_index = next_alice.rounds_completed;
    outcome.timestamp =
        config.t1 + static_cast<double>(alice.rounds_completed) * config.delta;

    // Step 1: encode, split at B1, put one half on the channel.
    StateVector state = prepare_and_split(outcome.bit_sent);

    // Outbound transit.
    check_norm_bound(state, counters);
    auto [outbound_obs, after_outbound] =
        apply_attack(attack, state, Transit::Outbound, rng, outcome.round_index);
    outcome.tracy_outbound = outbound_obs;
    state = after_outbound;

    // Steps 2-4: Bob picks mirror or read.
    BobDecision decision = bob_decide(bob, rng);
    BobState next_bob = decision.bob;
    outcome.mirrored = decision.mirror;

    if (decision.mirror) {
        state = mirror(state);
        // Return transit; only mirrored packages travel back.
        if (outbound_obs.found != Found::Yes) check_norm_bound(state, counters);
        auto [inbound_obs, after_inbound] =
            apply_attack(attack, state, Transit::Inbound, rng, outcome.round_index);
        outcome.tracy_inbound = inbound_obs;
        state = after_inbound;
        outcome.bob = BobOutcome::Mirrored;
    } else {
        auto [bob_outcome, after_read] = bob_read(state, rng.next());
        outcome.bob = bob_outcome;
        if (bob_outcome == BobOutcome::Bit0 || bob_outcome == BobOutcome::Bit1) {
            next_bob.received.push_back(bob_outcome == BobOutcome::Bit1 ? '1' : '0');
            // Bob keeps the detected particle; Alice's side is empty.
            state = StateVector::vacuum();
        } else {
            state = after_read;
        }
    }

    // Step 5: interference experiment at B2.
    auto [event, after_detect] = interfere_and_detect(state, rng.next());
    outcome.detector = event;
    state = after_detect;

    // Between rounds nothing may remain on the channel.
    detail::check(std::abs(state.amp(Site::Channel, 0)) <= kExactTol &&
                      std::abs(state.amp(Site::Channel, 1)) <= kExactTol,
                  "channel is empty at the round boundary");

    if (config.payload_check && event.detected_bit >= 0 &&
        event.detected_bit != outcome.bit_sent) {
        outcome.payload_mismatch = true;
    }

    // Step 7: silent detectors mean Bob received the bit; otherwise the same
    // bit is retransmitted next round.
    outcome.bit_delivered = !event.c_fired && !event.d_fired;
    bool bob_got_bit =
        outcome.bob == BobOutcome::Bit0 || outcome.bob == BobOutcome::Bit1;
    detail::check(outcome.bit_delivered == bob_got_bit,
                  "Alice's completion rule agrees with Bob's detection");
    if (outcome.bit_delivered) next_alice.next_bit = alice.next_bit + 1;

    if (counters != nullptr) {
        ++counters->rounds;
        if (outcome.tracy_outbound.found == Found::Yes) ++counters->tracy_found_events;
        if (outcome.tracy_inbound.found == Found::Yes) ++counters->tracy_found_events;
        if (outcome.bit_delivered) ++counters->bits_delivered;
    }
    return RoundResult{outcome, next_alice, next_bob};
}

struct CheckpointSchedule {
    CheckpointPolicy policy;
    long n_min;
    double alpha;
    long next_doubling;
    int doubling_index = 0;

    explicit CheckpointSchedule(const SessionConfig& config)
        : policy(config.checkpoint),
          n_min(config.n_min),
          alpha(config.alpha),
          next_doubling(config.n_min) {}

    // Level to test at for this pair count; 0 when no test is scheduled.
    double level_due(long pairs) {
        if (policy == CheckpointPolicy::EveryEven) {
            return pairs >= n_min ? alpha : 0.0;
        }
        if (pairs != next_doubling) return 0.0;
        double level = alpha * std::pow(0.5, doubling_index + 1);
        ++doubling_index;
        next_doubling *= 2;
        return level;
    }
};

}  // namespace

RoundResult run_round(const AliceState& alice, const BobState& bob,
                      const AttackStrategy& attack, RandomStream& rng,
                      const SessionConfig& config) {
    return run_round_impl(alice, bob, attack, rng, config, nullptr);
}

std::string random_message(int n, std::uint64_t seed) {
    if (n < 1) throw ConfigError("message length must be at least 1");
    Mt64Stream stream(mix64(seed, 0x6D7367));
    std::string message(static_cast<std::size_t>(n), '0');
    for (char& c : message) {
        if (stream.next() < 0.5) c = '1';
    }
    return message;
}

Transcript run_session(const SessionConfig& config, std::uint64_t seed) {
    config.validate();

    Transcript transcript;
    AliceState alice{config.message, 1, 0, config.payload_check};
    BobState bob;
    Mt64Stream rng(seed);
    CheckpointSchedule schedule(config);
    PairCounts tally;

    // Delivery latency runs from the pair-aligned start of each bit: a bit
    // first transmitted on the second (forced-mirror) round of a pair starts
    // its clock at the next pair boundary.
    int latency_bit = 0;
    long latency_start = 0;

    PairRecord pending{};

    while (!alice.done()) {
        if (config.max_pairs > 0 && tally.total >= config.max_pairs) {
            transcript.verdict = Verdict::Truncated;
            break;
        }

        RoundResult result =
            run_round_impl(alice, bob, config.attack, rng, config, &transcript.counters);
        alice = result.alice;
        bob = result.bob;
        const RoundOutcome& round = result.outcome;
        if (config.record_rounds) transcript.rounds.push_back(round);

        if (round.bit_index != latency_bit) {
            latency_bit = round.bit_index;
            latency_start =
                (round.round_index % 2 == 1) ? round.round_index : round.round_index + 1;
        }
        if (round.bit_delivered) {
            transcript.counters.delivery_latency_sum +=
                static_cast<double>(round.round_index - latency_start + 1);
            ++transcript.counters.delivery_latency_count;
        }

        if (round.payload_mismatch) {
            transcript.verdict = Verdict::Aborted;
            transcript.abort_reason = AbortReason::PayloadMismatch;
            transcript.abort_round = round.round_index;
            break;
        }

        std::uint8_t c = round.detector.c_fired ? 1 : 0;
        std::uint8_t d = round.detector.d_fired ? 1 : 0;
        if (round.round_index % 2 == 1) {
            pending = PairRecord{c, 0, d, 0};
            continue;
        }
        pending.c2 = c;
        pending.d2 = d;
        tally.add(pending);

        // Step 6 at the even-round boundary. A mass-zero pair rejects at any
        // sample size; the G-test waits for its scheduled checkpoints.
        if (tally.off_support > 0) {
            transcript.verdict = Verdict::Aborted;
            transcript.abort_reason = AbortReason::OffSupport;
            transcript.abort_round = round.round_index;
            break;
        }
        double level = schedule.level_due(tally.total);
        if (level > 0.0) {
            TestVerdict verdict = step6_test(tally, level);
            ++transcript.counters.checkpoints_run;
            transcript.counters.last_p_value = verdict.p_value;
            if (verdict.reject) {
                transcript.verdict = Verdict::Aborted;
                transcript.abort_reason = AbortReason::FrequencyDeviation;
                transcript.abort_round = round.round_index;
                break;
            }
        }
    }

    transcript.counters.pairs = tally.total;
    transcript.counters.support_cells = tally.support;
    transcript.counters.off_support_pairs = tally.off_support;
    transcript.delivered_message =
        config.message.substr(0, static_cast<std::size_t>(alice.next_bit - 1));
    detail::check(transcript.delivered_message == bob.received,
                  "Bob's received bits equal the delivered prefix");
    return transcript;
}

}  // namespace qtad
