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

#include "qtad/selftest.hpp"

#include <cmath>

#include "qtad/oracle.hpp"
#include "qtad/protocol.hpp"

namespace qtad {

namespace {

struct Reporter {
    const std::function<void(const std::string&)>& report;
    int failures = 0;

    void check(bool ok, const std::string& name) {
        report(std::string(ok ? "[ok]   " : "[FAIL] ") + name);
        if (!ok) ++failures;
    }
};

}  // namespace

int run_selftest(const std::function<void(const std::string&)>& report) {
    Reporter r{report};

    // State algebra.
    {
        StateVector split = prepare_and_split(0);
        r.check(std::abs(split.squared_norm() - 1.0) < kAlgebraTol,
                "split state has unit norm");
        r.check(std::abs(expectation(split, channel_projector()) - 0.5) < kAlgebraTol,
                "split state carries half its mass on the channel");
        bool threw = false;
        try {
            normalize(StateVector::from_amplitudes(Amplitudes::Zero()));
        } catch (const ZeroVectorError&) {
            threw = true;
        }
        r.check(threw, "normalizing the zero vector is rejected");
    }

    // Interference calibration: an undisturbed split state can only reach
    // detector C; the sign-flipped state can only reach D.
    {
        DetectorProbabilities p = detector_probabilities(prepare_and_split(1));
        r.check(p.d[0] + p.d[1] < kExactTol, "no-attack mirror round never fires D");
        Amplitudes a = Amplitudes::Zero();
        a[basis_index(Site::AliceLab, 1)] = 1.0 / std::sqrt(2.0);
        a[basis_index(Site::Channel, 1)] = -1.0 / std::sqrt(2.0);
        DetectorProbabilities flipped =
            detector_probabilities(StateVector::from_amplitudes(a));
        r.check(flipped.c[0] + flipped.c[1] < kExactTol,
                "sign-flipped state never fires C");
    }

    // Locality: families satisfying the shared-eigenvalue condition cannot
    // tell a transmission from vacuum; families that can tell them apart
    // disturb the split state.
    {
        Mt64Stream rng(0x5E1F7E57);
        bool nondisturbing_ok = true;
        for (int i = 0; i < 200 && nondisturbing_ok; ++i) {
            int bit = i % 2;
            MeasurementFamily fam = random_nondisturbing_local_family(rng, bit);
            nondisturbing_ok =
                distinguishability(fam, prepare_and_split(bit), StateVector::vacuum()) <
                kAlgebraTol;
        }
        r.check(nondisturbing_ok, "non-disturbing local families learn nothing");

        int informative = 0;
        bool contrapositive_ok = true;
        while (informative < 200) {
            MeasurementFamily fam = random_local_family(rng, 3);
            if (distinguishability(fam, prepare_and_split(0), StateVector::vacuum()) <=
                0.1) {
                continue;
            }
            ++informative;
            if (is_nondisturbing(fam, prepare_and_split(0))) {
                contrapositive_ok = false;
                break;
            }
        }
        r.check(contrapositive_ok, "informative local families disturb the state");
    }

    // No-attack pair table.
    {
        ExactDistribution dist = oracle_pair_distribution(AttackStrategy::none());
        const NullDistribution& null = exact_null();
        bool match = dist.is_exact();
        for (const auto& [record, probability] : null.support) {
            match = match && dist.probability_exact(record) == probability;
        }
        match = match && dist.off_support_mass_exact() == Rational(0);
        r.check(match, "oracle reproduces the no-attack pair table exactly");
        r.check(expected_rounds_per_bit_exact(AttackStrategy::none()) == Rational(7, 2),
                "throughput recurrence gives 7/2 rounds per bit");
    }

    // Full-strength presence attack.
    {
        ExactDistribution dist =
            oracle_pair_distribution(AttackStrategy::projective_presence(1.0));
        r.check(dist.off_support_mass_exact() == Rational(3, 8),
                "full presence attack puts mass 3/8 off support");
    }

    // A short no-attack session delivers its message.
    {
        SessionConfig config;
        config.message = "1011";
        Transcript transcript = run_session(config, 0xC0FFEE);
        r.check(transcript.verdict == Verdict::Completed &&
                    transcript.delivered_message == config.message,
                "no-attack session delivers the message");
        r.check(transcript.counters.norm_bound_violations == 0,
                "channel mass never exceeds one half at honest transits");
    }

    return r.failures;
}

}  // namespace qtad
