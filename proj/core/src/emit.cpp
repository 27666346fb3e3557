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

#include "qtad/emit.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace qtad {

std::string format_double12(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

std::string verdict_name(Verdict verdict) {
    switch (verdict) {
        case Verdict::Completed: return "Completed";
        case Verdict::Aborted: return "Aborted";
        case Verdict::Truncated: return "Truncated";
    }
    return "?";
}

std::string abort_reason_name(AbortReason reason) {
    switch (reason) {
        case AbortReason::None: return "none";
        case AbortReason::OffSupport: return "off_support";
        case AbortReason::FrequencyDeviation: return "frequency_deviation";
        case AbortReason::PayloadMismatch: return "payload_mismatch";
    }
    return "?";
}

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

std::string found_name(Found found) {
    switch (found) {
        case Found::Yes: return "yes";
        case Found::No: return "no";
        case Found::NotMeasured: return "not_measured";
    }
    return "?";
}

std::string bob_outcome_name(BobOutcome outcome) {
    switch (outcome) {
        case BobOutcome::Bit0: return "bit0";
        case BobOutcome::Bit1: return "bit1";
        case BobOutcome::Epsilon: return "eps";
        case BobOutcome::Mirrored: return "mirrored";
    }
    return "?";
}

}  // namespace

void write_sessions_jsonl(const std::string& path, const ExperimentResult& result) {
    std::ofstream out = open_output(path);
    for (const SessionSummary& s : result.sessions) {
        out << "{\"session\":" << s.session_index << ",\"seed\":" << s.seed
            << ",\"q\":" << format_double12(s.q) << ",\"eta\":" << format_double12(s.eta)
            << ",\"verdict\":\"" << verdict_name(s.verdict) << "\""
            << ",\"abort_reason\":\"" << abort_reason_name(s.abort_reason) << "\""
            << ",\"rounds\":" << s.rounds_used << ",\"pairs\":" << s.pairs_tested
            << ",\"bits_delivered\":" << s.bits_delivered
            << ",\"detection_round\":" << s.detection_round
            << ",\"detection_pair\":" << s.detection_pair
            << ",\"last_p_value\":" << format_double12(s.last_p_value)
            << ",\"tracy_found\":" << s.tracy_found
            << ",\"tracy_estimate\":" << format_double12(s.tracy_estimate)
            << ",\"true_transmissions\":" << s.true_transmissions << ",\"cells\":["
            << s.support_cells[0] << "," << s.support_cells[1] << ","
            << s.support_cells[2] << "," << s.support_cells[3] << ","
            << s.support_cells[4] << "]"
            << ",\"off_support_pairs\":" << s.off_support_pairs
            << ",\"norm_bound_violations\":" << s.norm_bound_violations << "}\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_aggregate_csv(const std::string& path, const ExperimentResult& result) {
    std::ofstream out = open_output(path);
    out << "q,eta,sessions,aborted,completed,truncated,detection_rate,"
           "mean_detection_latency_pairs,mean_rounds_per_delivered_bit,"
           "gross_rounds_per_bit,mean_abs_tracy_rel_error,norm_bound_violations\n";
    for (const AggregateRow& row : result.aggregates) {
        out << format_double12(row.q) << "," << format_double12(row.eta) << ","
            << row.sessions << "," << row.aborted << "," << row.completed << ","
            << row.truncated << "," << format_double12(row.detection_rate) << ","
            << format_double12(row.mean_detection_latency_pairs) << ","
            << format_double12(row.mean_rounds_per_delivered_bit) << ","
            << format_double12(row.gross_rounds_per_bit) << ","
            << format_double12(row.mean_abs_tracy_rel_error) << ","
            << row.norm_bound_violations << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_curves_csv(const std::string& path, const ExperimentResult& result) {
    std::ofstream out = open_output(path);
    out << "q,eta,pairs,detection_probability\n";

    // Sessions are grouped by sweep point in emission order.
    std::map<std::pair<double, double>, std::vector<const SessionSummary*>> groups;
    std::vector<std::pair<double, double>> order;
    for (const SessionSummary& s : result.sessions) {
        auto key = std::make_pair(s.q, s.eta);
        if (groups.find(key) == groups.end()) order.push_back(key);
        groups[key].push_back(&s);
    }

    for (const auto& key : order) {
        const auto& sessions = groups[key];
        long max_pairs = 1;
        for (const SessionSummary* s : sessions) {
            max_pairs = std::max(max_pairs, s->pairs_tested);
            if (s->verdict == Verdict::Aborted) {
                max_pairs = std::max(max_pairs, s->detection_pair);
            }
        }
        for (long budget = 1; budget <= max_pairs; ++budget) {
            long detected = 0;
            for (const SessionSummary* s : sessions) {
                if (s->verdict == Verdict::Aborted && s->detection_pair <= budget) {
                    ++detected;
                }
            }
            out << format_double12(key.first) << "," << format_double12(key.second)
                << "," << budget << ","
                << format_double12(static_cast<double>(detected) /
                                   static_cast<double>(sessions.size()))
                << "\n";
        }
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_transcript_jsonl(const std::string& path, const Transcript& transcript) {
    std::ofstream out = open_output(path);
    for (const RoundOutcome& r : transcript.rounds) {
        out << "{\"round\":" << r.round_index << ",\"t\":" << format_double12(r.timestamp)
            << ",\"bit_index\":" << r.bit_index << ",\"bit\":" << r.bit_sent
            << ",\"mirrored\":" << (r.mirrored ? "true" : "false") << ",\"bob\":\""
            << bob_outcome_name(r.bob) << "\""
            << ",\"c\":" << (r.detector.c_fired ? 1 : 0)
            << ",\"d\":" << (r.detector.d_fired ? 1 : 0)
            << ",\"detected_bit\":" << r.detector.detected_bit << ",\"tracy_outbound\":\""
            << found_name(r.tracy_outbound.found) << "\""
            << ",\"tracy_inbound\":\"" << found_name(r.tracy_inbound.found) << "\""
            << ",\"delivered\":" << (r.bit_delivered ? "true" : "false") << "}\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_transcript_csv(const std::string& path, const Transcript& transcript) {
    std::ofstream out = open_output(path);
    out << "round,t,bit_index,bit,mirrored,bob,c,d,detected_bit,tracy_outbound,"
           "tracy_inbound,delivered\n";
    for (const RoundOutcome& r : transcript.rounds) {
        out << r.round_index << "," << format_double12(r.timestamp) << "," << r.bit_index
            << "," << r.bit_sent << "," << (r.mirrored ? 1 : 0) << ","
            << bob_outcome_name(r.bob) << "," << (r.detector.c_fired ? 1 : 0) << ","
            << (r.detector.d_fired ? 1 : 0) << "," << r.detector.detected_bit << ","
            << found_name(r.tracy_outbound.found) << ","
            << found_name(r.tracy_inbound.found) << ","
            << (r.bit_delivered ? 1 : 0) << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace qtad
