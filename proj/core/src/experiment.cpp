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

#include "qtad/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace qtad {

void ExperimentConfig::validate() const {
    base.validate();
    if (num_sessions < 1) throw ConfigError("num_sessions must be at least 1");
    if (threads < 1) throw ConfigError("threads must be at least 1");
    for (const SweepPoint& point : sweep) {
        if (!(point.q >= 0.0 && point.q <= 1.0) ||
            !(point.eta >= 0.0 && point.eta <= 1.0)) {
            throw ConfigError("sweep parameters must lie in [0, 1]");
        }
    }
}

SessionSummary summarize_session(const Transcript& transcript, long session_index,
                                 std::uint64_t seed, const SessionConfig& config) {
    SessionSummary s;
    s.session_index = session_index;
    s.seed = seed;
    s.q = config.attack.q;
    s.eta = config.attack.eta;
    s.verdict = transcript.verdict;
    s.abort_reason = transcript.abort_reason;
    s.rounds_used = transcript.counters.rounds;
    s.pairs_tested = transcript.counters.pairs;
    s.bits_delivered = transcript.counters.bits_delivered;
    s.detection_round = transcript.abort_round;
    s.detection_pair = (transcript.abort_round + 1) / 2;
    s.last_p_value = transcript.counters.last_p_value;
    s.tracy_found = transcript.counters.tracy_found_events;
    s.tracy_estimate = tracy_estimate(config.attack, s.tracy_found);
    s.true_transmissions = transcript.counters.rounds;
    s.support_cells = transcript.counters.support_cells;
    s.off_support_pairs = transcript.counters.off_support_pairs;
    s.norm_bound_violations = transcript.counters.norm_bound_violations;
    s.delivery_latency_sum = transcript.counters.delivery_latency_sum;
    s.delivery_latency_count = transcript.counters.delivery_latency_count;
    s.delivered_prefix_ok =
        transcript.delivered_message ==
        config.message.substr(0, transcript.delivered_message.size());
    return s;
}

namespace {

AggregateRow aggregate_point(const SweepPoint& point,
                             const std::vector<SessionSummary>& sessions) {
    AggregateRow row;
    row.q = point.q;
    row.eta = point.eta;
    row.sessions = static_cast<long>(sessions.size());

    double latency_pairs = 0.0;
    double delivery_sum = 0.0;
    long delivery_count = 0;
    long total_rounds = 0;
    long total_bits = 0;
    double tracy_err = 0.0;
    for (const SessionSummary& s : sessions) {
        switch (s.verdict) {
            case Verdict::Aborted: ++row.aborted; break;
            case Verdict::Completed: ++row.completed; break;
            case Verdict::Truncated: ++row.truncated; break;
        }
        if (s.verdict == Verdict::Aborted) {
            latency_pairs += static_cast<double>(s.detection_pair);
        }
        delivery_sum += s.delivery_latency_sum;
        delivery_count += s.delivery_latency_count;
        total_rounds += s.rounds_used;
        total_bits += s.bits_delivered;
        if (s.true_transmissions > 0) {
            tracy_err += std::abs(s.tracy_estimate -
                                  static_cast<double>(s.true_transmissions)) /
                         static_cast<double>(s.true_transmissions);
        }
        row.norm_bound_violations += s.norm_bound_violations;
    }
    row.detection_rate =
        static_cast<double>(row.aborted) / static_cast<double>(row.sessions);
    row.mean_detection_latency_pairs =
        row.aborted > 0 ? latency_pairs / static_cast<double>(row.aborted) : 0.0;
    row.mean_rounds_per_delivered_bit =
        delivery_count > 0 ? delivery_sum / static_cast<double>(delivery_count) : 0.0;
    row.gross_rounds_per_bit =
        total_bits > 0 ? static_cast<double>(total_rounds) / static_cast<double>(total_bits)
                       : 0.0;
    row.mean_abs_tracy_rel_error = tracy_err / static_cast<double>(row.sessions);
    return row;
}

SessionConfig config_for_point(const SessionConfig& base, const SweepPoint& point) {
    SessionConfig config = base;
    config.attack.q = point.q;
    config.attack.eta = point.eta;
    return config;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();

    std::vector<SweepPoint> points = config.sweep;
    if (points.empty()) {
        points.push_back(SweepPoint{config.base.attack.q, config.base.attack.eta});
    }

    ExperimentResult result;
    for (const SweepPoint& point : points) {
        SessionConfig session_config = config_for_point(config.base, point);
        session_config.validate();

        std::vector<SessionSummary> summaries(
            static_cast<std::size_t>(config.num_sessions));
        auto worker = [&](long begin, long end) {
            for (long i = begin; i < end; ++i) {
                std::uint64_t seed = mix64(config.seed, static_cast<std::uint64_t>(i));
                SessionConfig per_session = session_config;
                per_session.record_rounds = false;
                Transcript transcript = run_session(per_session, seed);
                summaries[static_cast<std::size_t>(i)] =
                    summarize_session(transcript, i, seed, per_session);
            }
        };

        if (config.threads <= 1 || config.num_sessions < 2) {
            worker(0, config.num_sessions);
        } else {
            int thread_count =
                static_cast<int>(std::min<long>(config.threads, config.num_sessions));
            std::vector<std::thread> pool;
            long chunk = (config.num_sessions + thread_count - 1) / thread_count;
            for (int t = 0; t < thread_count; ++t) {
                long begin = t * chunk;
                long end = std::min<long>(begin + chunk, config.num_sessions);
                if (begin >= end) break;
                pool.emplace_back(worker, begin, end);
            }
            for (std::thread& t : pool) t.join();
        }

        result.aggregates.push_back(aggregate_point(point, summaries));
        result.sessions.insert(result.sessions.end(), summaries.begin(),
                               summaries.end());
    }
    return result;
}

}  // namespace qtad
