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

#include <utility>

#include "qtad/qstate.hpp"

namespace qtad {

// The physical devices of the protocol: Alice's beam splitters and detector
// pair, Bob's mirror-or-read box. All of them are operations on StateVector.

/// What Alice's detectors reported for one interference experiment.
/// At most one of the two detectors fires (single particle); detected_bit is
/// the payload bit resolved by the firing detector, -1 when neither fired.
struct DetectorEvent {
    bool c_fired = false;
    bool d_fired = false;
    int detected_bit = -1;
};

enum class BobOutcome { Bit0, Bit1, Epsilon, Mirrored };

/// Encode bit m, pass through beam splitter B1 and put one half on the
/// channel: amplitude 1/sqrt(2) on (AliceLab, m) and (Channel, m).
StateVector prepare_and_split(int bit);

/// Bob's mirror returns the wave package unchanged.
StateVector mirror(const StateVector& s);

/// The package on the channel enters Bob's laboratory: amplitudes move from
/// (Channel, b) to (BobLab, b). Throws InvalidStateError if Bob's laboratory
/// already holds amplitude (two packages at Bob cannot happen).
StateVector transfer_channel_to_bob(const StateVector& s);

/// Bob's readout projectors: Q0 = |b,0><b,0|, Q1 = |b,1><b,1|,
/// Qeps = (1 - |b><b|) (x) 1.
const MeasurementFamily& bob_readout_family();

/// Bob reads: transfer into his lab, then measure {Q0, Q1, Qeps}.
std::pair<BobOutcome, StateVector> bob_read(const StateVector& s, double rand);

/// Probabilities of the five detector outcomes (C0, C1, D0, D1, none) for a
/// state about to enter beam splitter B2.
struct DetectorProbabilities {
    double c[2];
    double d[2];
    double none;
};
DetectorProbabilities detector_probabilities(const StateVector& s);

/// Alice's interference experiment at B2. The stored half meets whatever
/// returned on the channel; detector C sits in the constructive branch and D
/// in the destructive one:
///   amp_C(b) = (amp(AliceLab,b) + amp(Channel,b)) / sqrt(2)
///   amp_D(b) = (amp(AliceLab,b) - amp(Channel,b)) / sqrt(2)
/// A firing detector consumes the particle; the returned state is vacuum in
/// every branch (a silent experiment means the particle stayed with Bob).
/// Outcome intervals in rand order: C0, C1, D0, D1, none.
/// Precondition: no amplitude on (BobLab, .); throws PreconditionError.
std::pair<DetectorEvent, StateVector> interfere_and_detect(const StateVector& s,
                                                           double rand);

/// Projector onto the channel subspace span{(Channel,0), (Channel,1)}.
const Operator& channel_projector();

/// Projector onto span{(site,0), (site,1)}.
Operator site_projector(Site site);

}  // namespace qtad
