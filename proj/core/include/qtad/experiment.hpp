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

#include <cstdint>
#include <string>
#include <vector>

#include "qtad/protocol.hpp"

namespace qtad {

struct SweepPoint {
    double q = 0.0;
    double eta = 0.0;
};

struct ExperimentConfig {
    SessionConfig base;
    long num_sessions = 1;
    std::uint64_t seed = 1;
    /// Attack-parameter grid; empty means "run the base attack as is".
    /// Session seeds repeat across grid points (common random numbers).
    std::vector<SweepPoint> sweep;
    int threads = 1;

    void validate() const;
};

struct SessionSummary {
    long session_index = 0;
    std::uint64_t seed = 0;
    double q = 0.0;
    double eta = 0.0;
    Verdict verdict = Verdict::Completed;
    AbortReason abort_reason = AbortReason::None;
    long rounds_used = 0;
    long pairs_tested = 0;
    long bits_delivered = 0;
    long detection_round = 0;  // 0 unless aborted
    long detection_pair = 0;
    double last_p_value = 1.0;
    long tracy_found = 0;
    double tracy_estimate = 0.0;
    long true_transmissions = 0;
    std::array<long, 5> support_cells{};
    long off_support_pairs = 0;
    long norm_bound_violations = 0;
    double delivery_latency_sum = 0.0;
    long delivery_latency_count = 0;
    bool delivered_prefix_ok = true;
};

/// Aggregate statistics for one sweep point.
struct AggregateRow {
    double q = 0.0;
    double eta = 0.0;
    long sessions = 0;
    long aborted = 0;
    long completed = 0;
    long truncated = 0;
    double detection_rate = 0.0;
    double mean_detection_latency_pairs = 0.0;  // among aborted sessions
    /// Mean rounds from a bit's pair-aligned start to its delivery (the
    /// recurrence value; 3.5 with no attack).
    double mean_rounds_per_delivered_bit = 0.0;
    /// Total rounds over total delivered bits (includes alignment rounds).
    double gross_rounds_per_bit = 0.0;
    double mean_abs_tracy_rel_error = 0.0;
    long norm_bound_violations = 0;
};

struct ExperimentResult {
    std::vector<SessionSummary> sessions;  // ordered by (sweep point, index)
    std::vector<AggregateRow> aggregates;  // one row per sweep point
};

SessionSummary summarize_session(const Transcript& transcript, long session_index,
                                 std::uint64_t seed, const SessionConfig& config);

/// Runs num_sessions sessions per sweep point; session i uses seed
/// mix64(config.seed, i). Sessions may run on several threads; results are
/// ordered by index before they are returned, so output never depends on
/// the schedule.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace qtad
