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

#include <string>
#include <utility>
#include <vector>

#include "qtad/qstate.hpp"
#include "qtad/rng.hpp"

namespace qtad {

// Tracy watches the channel. She has no access to the laboratories, so every
// measurement she can perform acts on the channel factor only; this module
// holds her concrete strategies and the algebra for reasoning about what
// channel-local measurements can and cannot distinguish.

enum class AttackKind { NoAttack, ProjectivePresence, WeakPresence, InterceptRead };
enum class TransitPolicy { OutboundOnly, BothTransits };
enum class Transit { Outbound, Inbound };

struct AttackStrategy {
    AttackKind kind = AttackKind::NoAttack;
    double q = 0.0;    // per-transit measurement rate (projective / intercept)
    double eta = 0.0;  // weak-measurement strength
    TransitPolicy transits = TransitPolicy::OutboundOnly;

    static AttackStrategy none();
    static AttackStrategy projective_presence(double q,
                                              TransitPolicy t = TransitPolicy::OutboundOnly);
    static AttackStrategy weak_presence(double eta,
                                        TransitPolicy t = TransitPolicy::OutboundOnly);
    static AttackStrategy intercept_read(double q,
                                         TransitPolicy t = TransitPolicy::OutboundOnly);

    bool covers(Transit t) const {
        return t == Transit::Outbound || transits == TransitPolicy::BothTransits;
    }
};

enum class Found { Yes, No, NotMeasured };

/// Tracy's record for one channel transit.
struct TracyObservation {
    long round_index = 0;
    std::string outcome = "not_measured";
    Found found = Found::NotMeasured;
};

// The channel factor is spanned by {channel-vacuum, channel-bit0,
// channel-bit1}. A channel-local operator is a 3x3 block b on that factor;
// lifting embeds it into the 7-dimensional protocol space. On the
// laboratory subspaces the lift acts as the scalar <vac|b|vac>, i.e.
// trivially, which is exactly how an operator of the form 1 (x) b looks from
// inside the one-particle-plus-vacuum sector.
using LocalMatrix = Eigen::Matrix3cd;

struct LocalOperator {
    LocalMatrix block;
    Operator lifted() const;
};

/// Lift each 3x3 block and validate the result as a POVM.
/// Throws NotLocalError / InvalidFamilyError.
MeasurementFamily lift_family(const std::vector<std::pair<std::string, LocalMatrix>>& blocks);

/// True iff `op` has the lifted channel-local shape: block structure over
/// {vacuum, channel} vs laboratory indices, and scalar <vac|op|vac> times
/// the identity on the laboratory block.
bool is_lifted_local(const Operator& op, double tol = kAlgebraTol);

/// max_i |<psi|a_i|psi> - <phi|a_i|phi>| over the family. Zero means the
/// family cannot tell psi from phi. Throws NotLocalError if an element is
/// not channel-local.
double distinguishability(const MeasurementFamily& fam, const StateVector& psi,
                          const StateVector& phi);

/// True iff s is an eigenvector of every element: ||a_i s - <s|a_i|s> s||
/// below tolerance for all i. Such a family leaves s untouched.
bool is_nondisturbing(const MeasurementFamily& fam, const StateVector& s);

/// Channel-presence projector pair {found, not_found} (lifted).
const MeasurementFamily& presence_family();
/// Channel readout triple {bit0, bit1, not_found} (lifted).
const MeasurementFamily& intercept_family();
/// Unambiguous weak presence Kraus pair:
///   K_yes = sqrt(eta) P_found,  K_no = sqrt(1-eta) P_found + (1 - P_found).
KrausFamily weak_presence_kraus(double eta);

/// Applies `strategy` to the state in transit. Draw order from `rng`: one
/// decision draw for rate-q strategies, then one measurement draw when a
/// measurement is applied. Transits not covered by the strategy's policy are
/// skipped without consuming draws.
std::pair<TracyObservation, StateVector> apply_attack(const AttackStrategy& strategy,
                                                      const StateVector& s, Transit transit,
                                                      RandomStream& rng,
                                                      long round_index = 0);

/// Random channel-local POVM satisfying the non-disturbance eigenvector
/// condition for the split state carrying `bit`: every block has
/// channel-vacuum and (Channel, bit) as eigenvectors with one shared
/// eigenvalue. Families built here provably cannot distinguish the split
/// state from vacuum.
MeasurementFamily random_nondisturbing_local_family(RandomStream& rng, int bit);

/// Generic random channel-local POVM with `elements` elements (no
/// eigenvector constraint).
MeasurementFamily random_local_family(RandomStream& rng, int elements);

/// Expected Tracy "found" events per protocol round, used to turn her count
/// into a traffic estimate. Heuristic, reported next to the ground truth.
double expected_found_per_round(const AttackStrategy& strategy);

/// found_count / max(expected_found_per_round, epsilon); 0 when she never
/// measures.
double tracy_estimate(const AttackStrategy& strategy, long found_count);

}  // namespace qtad
