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
#include <cstdint>
#include <span>
#include <vector>

#include "qtad/rational.hpp"

namespace qtad {

struct RoundOutcome;  // protocol.hpp

/// Detector record of two consecutive rounds: (C_{2j-1}, C_{2j}, D_{2j-1}, D_{2j}).
struct PairRecord {
    std::uint8_t c1 = 0, c2 = 0, d1 = 0, d2 = 0;

    /// Dense index in {0..15}: c1*8 + c2*4 + d1*2 + d2.
    int index() const { return c1 * 8 + c2 * 4 + d1 * 2 + d2; }
    bool operator==(const PairRecord&) const = default;
};

inline constexpr int kPairTupleCount = 16;

/// The no-attack pair distribution. Exactly five tuples carry mass:
///   (1,1,0,0) 1/4   (1,0,0,0) 1/4   (0,1,0,0) 1/4
///   (1,0,0,1) 1/8   (0,1,1,0) 1/8
/// and every other tuple has probability zero.
struct NullDistribution {
    std::array<std::pair<PairRecord, Rational>, 5> support;
    Rational off_support_probability;

    /// Probability of `record`; zero off support.
    Rational probability(const PairRecord& record) const;
    /// Position of `record` in the support array, or -1.
    int support_slot(const PairRecord& record) const;
};

/// The hard-coded table above; masses sum to one exactly.
const NullDistribution& exact_null();

/// Groups consecutive completed rounds into non-overlapping pairs, in round
/// order; a trailing odd round is left out.
std::vector<PairRecord> group_pairs(std::span<const RoundOutcome> rounds);

/// Tallied pair sample: counts per support cell plus everything off support.
struct PairCounts {
    std::array<long, 5> support{};
    long off_support = 0;
    long total = 0;

    void add(const PairRecord& record);
    static PairCounts from(std::span<const PairRecord> pairs);
};

enum class RejectReason { None, OffSupport, FrequencyDeviation };

struct TestVerdict {
    bool reject = false;
    double statistic = 0.0;
    double p_value = 1.0;
    RejectReason reason = RejectReason::None;
};

/// Log-likelihood-ratio statistic G = 2 sum O_k ln(O_k / E_k) over the five
/// support cells (empty cells contribute zero).
double g_statistic(const PairCounts& counts);

/// Survival function of the chi-square distribution with 4 degrees of
/// freedom: P(X > x) = exp(-x/2) (1 + x/2). The support has five cells, so
/// the G statistic always has 4 degrees of freedom.
double chi_squared_survival_df4(double x);

/// Alice's Step-6 hypothesis test.
///  - Any pair off the null support rejects immediately (its probability
///    under the null is zero), at any sample size.
///  - Samples smaller than `n_min` otherwise return Accept with p = 1; the
///    caller decides the gating.
///  - Otherwise the G-test against the null table, rejecting at p < alpha.
/// Throws InsufficientDataError on an empty sample.
TestVerdict step6_test(const PairCounts& counts, double alpha, long n_min = 0);
TestVerdict step6_test(std::span<const PairRecord> pairs, double alpha, long n_min = 0);

}  // namespace qtad
