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

#include <doctest.h>

#include "qtad/adversary.hpp"
#include "qtad/optics.hpp"
#include "test_util.hpp"

using namespace qtad;
using namespace qtad::testing;

TEST_CASE("lifted local operators") {
    SUBCASE("presence pair lifts to channel projector and complement") {
        const MeasurementFamily& fam = presence_family();
        CHECK(fam.size() == 2);
        CHECK((fam.element(0) - channel_projector()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((fam.element(0) + fam.element(1) - Operator::Identity())
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
        CHECK(is_lifted_local(fam.element(0)));
        CHECK(is_lifted_local(fam.element(1)));
    }
    SUBCASE("laboratory action is the vacuum scalar") {
        LocalMatrix b = LocalMatrix::Zero();
        b(0, 0) = 0.25;
        b(1, 1) = 0.75;
        b(2, 2) = 0.5;
        Operator lifted = LocalOperator{b}.lifted();
        CHECK(lifted(basis_index(Site::AliceLab, 0), basis_index(Site::AliceLab, 0)) ==
              Complex(0.25));
        CHECK(lifted(basis_index(Site::BobLab, 1), basis_index(Site::BobLab, 1)) ==
              Complex(0.25));
        CHECK(is_lifted_local(lifted));
    }
    SUBCASE("an operator touching a laboratory is not local") {
        Operator op = Operator::Identity();
        op(1, 3) = 0.5;
        op(3, 1) = 0.5;
        CHECK(!is_lifted_local(op));
    }
}

TEST_CASE("apply_attack") {
    StateVector split = prepare_and_split(0);

    SUBCASE("no attack is the identity and consumes no draws") {
        SequenceStream rng{};
        auto [obs, state] = apply_attack(AttackStrategy::none(), split,
                                         Transit::Outbound, rng);
        CHECK(obs.found == Found::NotMeasured);
        CHECK((state.amps() - split.amps()).norm() == 0.0);
        CHECK(rng.consumed() == 0);
    }

    SUBCASE("projective presence at full rate splits found/not-found evenly") {
        // Draw order: decision, then measurement.
        SequenceStream found_rng{0.0, 0.25};
        auto [found_obs, found_state] = apply_attack(
            AttackStrategy::projective_presence(1.0), split, Transit::Outbound, found_rng);
        CHECK(found_obs.found == Found::Yes);
        CHECK(states_match_up_to_phase(found_state, StateVector::basis(Site::Channel, 0)));

        SequenceStream missed_rng{0.0, 0.75};
        auto [missed_obs, missed_state] = apply_attack(
            AttackStrategy::projective_presence(1.0), split, Transit::Outbound, missed_rng);
        CHECK(missed_obs.found == Found::No);
        CHECK(states_match_up_to_phase(missed_state, StateVector::basis(Site::AliceLab, 0)));

        // The boundary between the outcomes is the channel expectation 1/2.
        CHECK(expectation(split, channel_projector()) == doctest::Approx(0.5));
    }

    SUBCASE("rate decision can skip the measurement") {
        SequenceStream rng{0.9};  // decision draw 0.9 >= q = 0.5
        auto [obs, state] = apply_attack(AttackStrategy::projective_presence(0.5), split,
                                         Transit::Outbound, rng);
        CHECK(obs.found == Found::NotMeasured);
        CHECK((state.amps() - split.amps()).norm() == 0.0);
        CHECK(rng.consumed() == 1);
    }

    SUBCASE("vacuum is never disturbed and never found") {
        Mt64Stream rng(7);
        for (const AttackStrategy& strategy :
             {AttackStrategy::projective_presence(1.0), AttackStrategy::weak_presence(0.8),
              AttackStrategy::intercept_read(1.0)}) {
            auto [obs, state] =
                apply_attack(strategy, StateVector::vacuum(), Transit::Outbound, rng);
            CHECK(obs.found != Found::Yes);
            CHECK(states_match_up_to_phase(state, StateVector::vacuum()));
        }
    }

    SUBCASE("weak presence at strength zero does nothing for every input") {
        for (const StateVector& s :
             {split, StateVector::basis(Site::Channel, 0), StateVector::vacuum()}) {
            Mt64Stream rng(11);
            auto [obs, state] =
                apply_attack(AttackStrategy::weak_presence(0.0), s, Transit::Outbound, rng);
            CHECK(obs.found == Found::No);
            CHECK(states_match_up_to_phase(state, s));
        }
    }

    SUBCASE("intercept read resolves the transmitted bit") {
        SequenceStream rng{0.0, 0.2};  // decide to measure, land in the bit-0 interval
        auto [obs, state] = apply_attack(AttackStrategy::intercept_read(1.0), split,
                                         Transit::Outbound, rng);
        CHECK(obs.outcome == "read_bit0");
        CHECK(obs.found == Found::Yes);
        CHECK(states_match_up_to_phase(state, StateVector::basis(Site::Channel, 0)));
    }

    SUBCASE("outbound-only policy skips the return transit") {
        SequenceStream rng{};
        auto [obs, state] = apply_attack(AttackStrategy::projective_presence(1.0), split,
                                         Transit::Inbound, rng);
        CHECK(obs.found == Found::NotMeasured);
        CHECK(rng.consumed() == 0);

        SequenceStream both_rng{0.0, 0.25};
        auto [both_obs, both_state] = apply_attack(
            AttackStrategy::projective_presence(1.0, TransitPolicy::BothTransits), split,
            Transit::Inbound, both_rng);
        CHECK(both_obs.found == Found::Yes);
    }
}

TEST_CASE("locality of collapse") {
    // Tracy's measurements never rotate amplitudes inside Alice's laboratory:
    // the laboratory block of the post state is proportional to the pre state.
    Mt64Stream rng(0xA11CE);
    for (int trial = 0; trial < 200; ++trial) {
        Amplitudes a = Amplitudes::Zero();
        a[basis_index(Site::AliceLab, 0)] = Complex(rng.next() - 0.5, rng.next() - 0.5);
        a[basis_index(Site::AliceLab, 1)] = Complex(rng.next() - 0.5, rng.next() - 0.5);
        a[basis_index(Site::Channel, 0)] = Complex(rng.next() - 0.5, rng.next() - 0.5);
        a[vacuum_index()] = Complex(rng.next() - 0.5, 0.0);
        StateVector s = normalize(StateVector::from_amplitudes(a));

        AttackStrategy strategy = (trial % 2 == 0)
                                      ? AttackStrategy::projective_presence(1.0)
                                      : AttackStrategy::weak_presence(0.7);
        auto [obs, post] = apply_attack(strategy, s, Transit::Outbound, rng);

        Complex pre0 = s.amp(Site::AliceLab, 0);
        Complex pre1 = s.amp(Site::AliceLab, 1);
        Complex post0 = post.amp(Site::AliceLab, 0);
        Complex post1 = post.amp(Site::AliceLab, 1);
        // post = c * pre with one real scale c >= 0 for the laboratory block.
        CHECK(std::abs(post0 * pre1 - post1 * pre0) < 1e-9);
        if (std::abs(pre0) > 1e-9 && std::abs(post0) > 1e-12) {
            Complex ratio = post0 / pre0;
            CHECK(std::abs(ratio.imag()) < 1e-9);
            CHECK(ratio.real() >= -1e-9);
        }
    }
}

TEST_CASE("distinguishability") {
    StateVector split = prepare_and_split(0);
    StateVector vacuum = StateVector::vacuum();

    SUBCASE("presence pair tells a transmission from vacuum at gap 1/2") {
        CHECK(distinguishability(presence_family(), split, vacuum) ==
              doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("the trivial family learns nothing") {
        MeasurementFamily trivial = lift_family({{"one", LocalMatrix::Identity()}});
        CHECK(distinguishability(trivial, split, vacuum) == doctest::Approx(0.0));
    }
    SUBCASE("shared-eigenvalue families learn nothing") {
        // Blocks diagonal in {vac, c0, c1} with equal vac and c0 entries.
        LocalMatrix b1 = LocalMatrix::Zero();
        b1(0, 0) = 0.3;
        b1(1, 1) = 0.3;
        b1(2, 2) = 0.9;
        LocalMatrix b2 = LocalMatrix::Identity() - b1;
        MeasurementFamily fam = lift_family({{"a", b1}, {"b", b2}});
        CHECK(distinguishability(fam, split, vacuum) < 1e-12);
    }
    SUBCASE("non-local elements are rejected") {
        Operator op = Operator::Identity() - site_projector(Site::AliceLab);
        Operator rest = Operator::Identity() - op;
        MeasurementFamily fam = MeasurementFamily::povm({{"a", op}, {"b", rest}});
        CHECK_THROWS_AS(distinguishability(fam, split, vacuum), NotLocalError);
    }
}

TEST_CASE("is_nondisturbing") {
    SUBCASE("Bob's readout leaves its eigenstates alone") {
        CHECK(is_nondisturbing(bob_readout_family(), StateVector::basis(Site::BobLab, 0)));
    }
    SUBCASE("the presence pair disturbs the split state") {
        CHECK(!is_nondisturbing(presence_family(), prepare_and_split(0)));
    }
    SUBCASE("diagonal families leave vacuum alone") {
        LocalMatrix b = LocalMatrix::Zero();
        b(0, 0) = 0.2;
        b(1, 1) = 0.8;
        b(2, 2) = 0.4;
        MeasurementFamily fam =
            lift_family({{"a", b}, {"b", LocalMatrix(LocalMatrix::Identity() - b)}});
        CHECK(is_nondisturbing(fam, StateVector::vacuum()));
    }
}

TEST_CASE("shared-eigenvalue condition implies indistinguishability") {
    Mt64Stream rng(0x5EED);
    for (int trial = 0; trial < 300; ++trial) {
        int bit = trial % 2;
        MeasurementFamily fam = random_nondisturbing_local_family(rng, bit);
        StateVector split = prepare_and_split(bit);
        CHECK(is_nondisturbing(fam, split));
        CHECK(distinguishability(fam, split, StateVector::vacuum()) < 1e-9);
    }
}

TEST_CASE("informative families disturb the split state") {
    Mt64Stream rng(0xFEED);
    int informative = 0;
    while (informative < 300) {
        MeasurementFamily fam = random_local_family(rng, 2 + informative % 3);
        if (distinguishability(fam, prepare_and_split(0), StateVector::vacuum()) <= 0.1) {
            continue;
        }
        ++informative;
        CHECK(!is_nondisturbing(fam, prepare_and_split(0)));
    }
}

TEST_CASE("tracy estimate heuristic") {
    CHECK(tracy_estimate(AttackStrategy::none(), 0) == 0.0);
    CHECK(tracy_estimate(AttackStrategy::projective_presence(0.5), 25) ==
          doctest::Approx(100.0));
    CHECK(tracy_estimate(AttackStrategy::weak_presence(0.5), 25) == doctest::Approx(100.0));
    CHECK(expected_found_per_round(AttackStrategy::projective_presence(
              1.0, TransitPolicy::BothTransits)) == doctest::Approx(0.75));
}
