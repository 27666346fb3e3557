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

#include "qtad/stats.hpp"

#include <cmath>
#include <limits>

#include "qtad/protocol.hpp"

namespace qtad {

Rational NullDistribution::probability(const PairRecord& record) const {
    int slot = support_slot(record);
    return slot < 0 ? Rational(0) : support[slot].second;
}

int NullDistribution::support_slot(const PairRecord& record) const {
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (support[i].first == record) return static_cast<int>(i);
    }
    return -1;
}

const NullDistribution& exact_null() {
    static const NullDistribution table{
        {{
            {PairRecord{1, 1, 0, 0}, Rational(2, 8)},
            {PairRecord{1, 0, 0, 0}, Rational(2, 8)},
            {PairRecord{0, 1, 0, 0}, Rational(2, 8)},
            {PairRecord{1, 0, 0, 1}, Rational(1, 8)},
            {PairRecord{0, 1, 1, 0}, Rational(1, 8)},
        }},
        Rational(0),
    };
    return table;
}

std::vector<PairRecord> group_pairs(std::span<const RoundOutcome> rounds) {
    std::vector<PairRecord> pairs;
    pairs.reserve(rounds.size() / 2);
    for (std::size_t i = 0; i + 1 < rounds.size(); i += 2) {
        const DetectorEvent& first = rounds[i].detector;
        const DetectorEvent& second = rounds[i + 1].detector;
        pairs.push_back(PairRecord{
            static_cast<std::uint8_t>(first.c_fired ? 1 : 0),
            static_cast<std::uint8_t>(second.c_fired ? 1 : 0),
            static_cast<std::uint8_t>(first.d_fired ? 1 : 0),
            static_cast<std::uint8_t>(second.d_fired ? 1 : 0),
        });
    }
    return pairs;
}

void PairCounts::add(const PairRecord& record) {
    int slot = exact_null().support_slot(record);
    if (slot < 0) {
        ++off_support;
    } else {
        ++support[slot];
    }
    ++total;
}

PairCounts PairCounts::from(std::span<const PairRecord> pairs) {
    PairCounts counts;
    for (const PairRecord& p : pairs) counts.add(p);
    return counts;
}

double g_statistic(const PairCounts& counts) {
    const NullDistribution& null = exact_null();
    double g = 0.0;
    for (std::size_t k = 0; k < counts.support.size(); ++k) {
        long observed = counts.support[k];
        if (observed == 0) continue;
        double expected =
            static_cast<double>(counts.total) * to_double(null.support[k].second);
        g += static_cast<double>(observed) *
             std::log(static_cast<double>(observed) / expected);
    }
    return 2.0 * g;
}

double chi_squared_survival_df4(double x) {
    if (x <= 0.0) return 1.0;
    return std::exp(-x / 2.0) * (1.0 + x / 2.0);
}

TestVerdict step6_test(const PairCounts& counts, double alpha, long n_min) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    if (counts.total == 0) throw InsufficientDataError("no pairs to test");

    if (counts.off_support > 0) {
        // Mass-zero outcome observed: the null is refuted outright.
        return TestVerdict{true, std::numeric_limits<double>::infinity(), 0.0,
                           RejectReason::OffSupport};
    }
    if (counts.total < n_min) {
        return TestVerdict{false, 0.0, 1.0, RejectReason::None};
    }
    double g = g_statistic(counts);
    double p = chi_squared_survival_df4(g);
    if (p < alpha) {
        return TestVerdict{true, g, p, RejectReason::FrequencyDeviation};
    }
    return TestVerdict{false, g, p, RejectReason::None};
}

TestVerdict step6_test(std::span<const PairRecord> pairs, double alpha, long n_min) {
    return step6_test(PairCounts::from(pairs), alpha, n_min);
}

}  // namespace qtad
