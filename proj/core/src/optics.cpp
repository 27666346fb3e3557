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

#include "qtad/optics.hpp"

#include <cmath>

namespace qtad {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

StateVector prepare_and_split(int bit) {
    detail::check(bit == 0 || bit == 1, "payload bit is 0 or 1");
    Amplitudes a = Amplitudes::Zero();
    a[basis_index(Site::AliceLab, bit)] = kInvSqrt2;
    a[basis_index(Site::Channel, bit)] = kInvSqrt2;
    return StateVector::from_amplitudes(a);
}

StateVector mirror(const StateVector& s) { return s; }

StateVector transfer_channel_to_bob(const StateVector& s) {
    for (int bit = 0; bit < 2; ++bit) {
        if (std::abs(s.amp(Site::BobLab, bit)) > kExactTol) {
            throw InvalidStateError("Bob's laboratory already holds a wave package");
        }
    }
    Amplitudes a = s.amps();
    for (int bit = 0; bit < 2; ++bit) {
        a[basis_index(Site::BobLab, bit)] = a[basis_index(Site::Channel, bit)];
        a[basis_index(Site::Channel, bit)] = 0.0;
    }
    return StateVector::from_amplitudes(a);
}

const MeasurementFamily& bob_readout_family() {
    static const MeasurementFamily family = [] {
        Operator q0 = Operator::Zero();
        q0(basis_index(Site::BobLab, 0), basis_index(Site::BobLab, 0)) = 1.0;
        Operator q1 = Operator::Zero();
        q1(basis_index(Site::BobLab, 1), basis_index(Site::BobLab, 1)) = 1.0;
        Operator qeps = Operator::Identity() - q0 - q1;
        return MeasurementFamily::projective({{"0", q0}, {"1", q1}, {"eps", qeps}});
    }();
    return family;
}

std::pair<BobOutcome, StateVector> bob_read(const StateVector& s, double rand) {
    StateVector inside = transfer_channel_to_bob(s);
    MeasureResult r = measure(inside, bob_readout_family(), rand);
    BobOutcome outcome = r.index == 0   ? BobOutcome::Bit0
                         : r.index == 1 ? BobOutcome::Bit1
                                        : BobOutcome::Epsilon;
    return {outcome, r.state};
}

DetectorProbabilities detector_probabilities(const StateVector& s) {
    DetectorProbabilities p{};
    for (int bit = 0; bit < 2; ++bit) {
        Complex stored = s.amp(Site::AliceLab, bit);
        Complex returned = s.amp(Site::Channel, bit);
        p.c[bit] = std::norm((stored + returned) * kInvSqrt2);
        p.d[bit] = std::norm((stored - returned) * kInvSqrt2);
    }
    p.none = std::norm(s.amp(vacuum_index()));
    return p;
}

std::pair<DetectorEvent, StateVector> interfere_and_detect(const StateVector& s,
                                                           double rand) {
    for (int bit = 0; bit < 2; ++bit) {
        if (std::abs(s.amp(Site::BobLab, bit)) > kExactTol) {
            throw PreconditionError("interference input has amplitude at Bob");
        }
    }
    DetectorProbabilities p = detector_probabilities(s);
    const double probs[5] = {p.c[0], p.c[1], p.d[0], p.d[1], p.none};
    double total = probs[0] + probs[1] + probs[2] + probs[3] + probs[4];
    if (std::abs(total - 1.0) > kAlgebraTol) {
        throw ZeroVectorError("detector outcome probabilities sum to " +
                              std::to_string(total));
    }

    int picked = -1;
    double cumulative = 0.0;
    for (int i = 0; i < 5; ++i) {
        if (probs[i] <= 0.0) continue;
        picked = i;
        if (rand < cumulative + probs[i]) break;
        cumulative += probs[i];
    }
    detail::check(picked >= 0, "detector stage selected an outcome");

    DetectorEvent event;
    if (picked < 4) {
        event.c_fired = picked < 2;
        event.d_fired = !event.c_fired;
        event.detected_bit = picked % 2;
    }
    return {event, StateVector::vacuum()};
}

const Operator& channel_projector() {
    static const Operator proj = site_projector(Site::Channel);
    return proj;
}

Operator site_projector(Site site) {
    Operator proj = Operator::Zero();
    proj(basis_index(site, 0), basis_index(site, 0)) = 1.0;
    proj(basis_index(site, 1), basis_index(site, 1)) = 1.0;
    return proj;
}

}  // namespace qtad
