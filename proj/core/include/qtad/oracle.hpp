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
#include <optional>

#include "qtad/adversary.hpp"
#include "qtad/rational.hpp"
#include "qtad/stats.hpp"

namespace qtad {

// Exhaustive enumeration of the probability tree of one round pair: Bob's
// coin x attack outcomes x Bob's measurement x detector outcomes. Branch
// probabilities are products of exact amplitude squares; nothing is sampled.
// This is an independent reference for the Monte Carlo path: it shares no
// code with the protocol simulation.
//
// For NoAttack, ProjectivePresence, InterceptRead, and WeakPresence with
// eta in {0, 1}, every amplitude lies in Q(sqrt 2) and every probability is
// an exact rational (attack rates taken as the exact dyadic value of their
// double). WeakPresence with 0 < eta < 1 creates genuinely irrational
// detector probabilities; the oracle then enumerates the same tree in
// floating point and reports an error bound instead of rationals.

/// Attack parameters for the oracle with exact rational rates. Building one
/// from an AttackStrategy keeps the exact dyadic value of its doubles;
/// constructing directly (e.g. from a parsed "1/3") is the reference mode.
struct OracleAttack {
    AttackKind kind = AttackKind::NoAttack;
    Rational q{0};
    Rational eta{0};
    TransitPolicy transits = TransitPolicy::OutboundOnly;

    static OracleAttack from_strategy(const AttackStrategy& attack);
    void validate() const;
};

struct ExactDistribution {
    /// Probability per pair tuple, indexed by PairRecord::index().
    std::array<double, 16> p{};
    /// Present iff the enumeration was exact.
    std::optional<std::array<Rational, 16>> exact;
    /// Rounding-error bound per entry; 0 in exact mode.
    double error_bound = 0.0;

    /// P(detector D fires at the mirrored round of a pair).
    double mirror_d = 0.0;
    std::optional<Rational> mirror_d_exact;
    /// P(Bob receives the bit in the read round of a pair).
    double read_success = 0.0;
    std::optional<Rational> read_success_exact;

    bool is_exact() const { return exact.has_value(); }

    double probability(const PairRecord& r) const { return p[r.index()]; }
    Rational probability_exact(const PairRecord& r) const;

    /// Total mass on tuples outside the five-element null support.
    double off_support_mass() const;
    Rational off_support_mass_exact() const;
};

ExactDistribution oracle_pair_distribution(const OracleAttack& attack);
ExactDistribution oracle_pair_distribution(const AttackStrategy& attack);

/// Expected rounds to deliver one bit from a pair boundary, from the oracle's
/// read-round success mass s via E = 2/s - 1/2. NoAttack gives 7/2.
Rational expected_rounds_per_bit_exact(const AttackStrategy& attack);
double expected_rounds_per_bit(const AttackStrategy& attack);

/// Total variation distance between two pair distributions.
double total_variation(const std::array<double, 16>& a, const std::array<double, 16>& b);

}  // namespace qtad
