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

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

TEST_CASE("basis enumeration is fixed") {
    CHECK(vacuum_index() == 0);
    CHECK(basis_index(Site::AliceLab, 0) == 1);
    CHECK(basis_index(Site::AliceLab, 1) == 2);
    CHECK(basis_index(Site::Channel, 0) == 3);
    CHECK(basis_index(Site::Channel, 1) == 4);
    CHECK(basis_index(Site::BobLab, 0) == 5);
    CHECK(basis_index(Site::BobLab, 1) == 6);
    for (int i = 0; i < kDim; ++i) {
        CHECK(StateVector::basis(i).amp(i) == Complex(1.0));
    }
}

TEST_CASE("from_amplitudes rejects non-finite entries") {
    Amplitudes a = Amplitudes::Zero();
    a[2] = Complex(std::nan(""), 0.0);
    CHECK_THROWS_AS(StateVector::from_amplitudes(a), InvalidStateError);
}

TEST_CASE("normalize") {
    SUBCASE("scales a stretched basis vector") {
        StateVector s = make_state({{0, 2.0}});
        StateVector n = normalize(s);
        CHECK(n.amp(0) == Complex(1.0));
        CHECK(n.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("unit vector passes through unchanged") {
        StateVector s = prepare_and_split(0);
        CHECK(states_match_up_to_phase(normalize(s), s));
        CHECK((normalize(s).amps() - s.amps()).norm() < 1e-12);
    }
    SUBCASE("scaled superposition recovers its coefficients") {
        StateVector s = make_state({{1, 3.0 * kInvSqrt2}, {3, 3.0 * kInvSqrt2}});
        StateVector n = normalize(s);
        CHECK(n.amp(1).real() == doctest::Approx(kInvSqrt2).epsilon(1e-12));
        CHECK(n.amp(3).real() == doctest::Approx(kInvSqrt2).epsilon(1e-12));
    }
    SUBCASE("zero vector is rejected") {
        CHECK_THROWS_AS(normalize(make_state({})), ZeroVectorError);
        CHECK_THROWS_AS(normalize(make_state({{4, 1e-13}})), ZeroVectorError);
    }
}

TEST_CASE("inner_product") {
    SUBCASE("basis orthonormality") {
        for (int j = 0; j < kDim; ++j) {
            for (int k = 0; k < kDim; ++k) {
                Complex ip = inner_product(StateVector::basis(j), StateVector::basis(k));
                CHECK(ip == Complex(j == k ? 1.0 : 0.0));
            }
        }
    }
    SUBCASE("orthogonal superpositions") {
        StateVector plus = make_state({{1, kInvSqrt2}, {3, kInvSqrt2}});
        StateVector minus = make_state({{1, kInvSqrt2}, {3, -kInvSqrt2}});
        CHECK(std::abs(inner_product(plus, minus)) < 1e-12);
    }
    SUBCASE("conjugate-linear in the first argument") {
        StateVector x = make_state({{1, Complex(0.0, 1.0)}});
        StateVector y = make_state({{1, 1.0}});
        CHECK(inner_product(x, y) == Complex(0.0, -1.0));
        CHECK(inner_product(y, x) == Complex(0.0, 1.0));
    }
}

TEST_CASE("expectation") {
    SUBCASE("full package on the channel") {
        CHECK(expectation(StateVector::basis(Site::Channel, 0), channel_projector()) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("split state has half its mass on the channel") {
        CHECK(expectation(prepare_and_split(0), channel_projector()) ==
              doctest::Approx(0.5).epsilon(1e-12));
        CHECK(expectation(prepare_and_split(1), channel_projector()) ==
              doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("vacuum sees nothing") {
        CHECK(expectation(StateVector::vacuum(), channel_projector()) ==
              doctest::Approx(0.0));
    }
    SUBCASE("non-Hermitian operators are rejected") {
        Operator op = Operator::Zero();
        op(0, 1) = 1.0;
        CHECK_THROWS_AS(expectation(StateVector::vacuum(), op), NotHermitianError);
    }
}

TEST_CASE("family validation") {
    Operator p_found = channel_projector();
    Operator p_rest = Operator::Identity() - p_found;

    SUBCASE("valid projective pair") {
        MeasurementFamily fam =
            MeasurementFamily::projective({{"found", p_found}, {"rest", p_rest}});
        CHECK(fam.is_projective());
        CHECK(fam.size() == 2);
    }
    SUBCASE("incomplete family is rejected") {
        CHECK_THROWS_AS(MeasurementFamily::povm({{"found", p_found}}),
                        InvalidFamilyError);
    }
    SUBCASE("negative element is rejected") {
        CHECK_THROWS_AS(MeasurementFamily::povm(
                            {{"a", 2.0 * p_found}, {"b", Operator::Identity() - 2.0 * p_found}}),
                        InvalidFamilyError);
    }
    SUBCASE("non-projective POVM is accepted but flagged") {
        MeasurementFamily fam = MeasurementFamily::povm(
            {{"half", 0.5 * Operator::Identity()}, {"other", 0.5 * Operator::Identity()}});
        CHECK(!fam.is_projective());
        CHECK_THROWS_AS(MeasurementFamily::projective({{"half", 0.5 * Operator::Identity()},
                                                       {"other", 0.5 * Operator::Identity()}}),
                        InvalidFamilyError);
        CHECK_THROWS_AS(measure(StateVector::vacuum(), fam, 0.3), InvalidFamilyError);
    }
    SUBCASE("Kraus completeness is enforced") {
        CHECK_THROWS_AS(KrausFamily::create({{"half", 0.5 * Operator::Identity()}}),
                        InvalidFamilyError);
        KrausFamily ok = KrausFamily::create(
            {{"a", std::sqrt(0.5) * Operator::Identity()},
             {"b", std::sqrt(0.5) * Operator::Identity()}});
        CHECK(ok.size() == 2);
    }
}

TEST_CASE("measure with Bob's readout family") {
    StateVector half_at_bob = make_state({{1, kInvSqrt2}, {5, kInvSqrt2}});

    SUBCASE("upper interval is the epsilon outcome") {
        MeasureResult r = measure(half_at_bob, bob_readout_family(), 0.9);
        CHECK(r.label == "eps");
        CHECK(states_match_up_to_phase(r.state, StateVector::basis(Site::AliceLab, 0)));
    }
    SUBCASE("lower interval finds the bit") {
        MeasureResult r = measure(half_at_bob, bob_readout_family(), 0.2);
        CHECK(r.label == "0");
        CHECK(states_match_up_to_phase(r.state, StateVector::basis(Site::BobLab, 0)));
    }
    SUBCASE("eigenstates are reported without disturbance for every rand") {
        StateVector eigen = StateVector::basis(Site::BobLab, 1);
        for (double rand : {0.0, 0.3, 0.7, 0.999}) {
            MeasureResult r = measure(eigen, bob_readout_family(), rand);
            CHECK(r.label == "1");
            CHECK(states_match_up_to_phase(r.state, eigen));
        }
    }
}

TEST_CASE("measure splits the unit interval by Born probabilities") {
    Operator p_found = channel_projector();
    Operator p_rest = Operator::Identity() - p_found;
    MeasurementFamily presence =
        MeasurementFamily::projective({{"found", p_found}, {"not_found", p_rest}});
    StateVector split = prepare_and_split(0);

    SUBCASE("both intervals of the presence measurement") {
        MeasureResult below = measure(split, presence, 0.25);
        CHECK(below.label == "found");
        CHECK(states_match_up_to_phase(below.state, StateVector::basis(Site::Channel, 0)));

        MeasureResult above = measure(split, presence, 0.75);
        CHECK(above.label == "not_found");
        CHECK(states_match_up_to_phase(above.state, StateVector::basis(Site::AliceLab, 0)));
    }

    SUBCASE("grid frequencies reproduce the Born probabilities") {
        // Deterministic grid: the fraction of draws selecting each outcome
        // equals its probability up to the grid resolution.
        const int grid = 10000;
        int found = 0;
        for (int i = 0; i < grid; ++i) {
            double rand = (i + 0.5) / grid;
            if (measure(split, presence, rand).index == 0) ++found;
        }
        CHECK(std::abs(found / double(grid) - 0.5) <= 1.0 / grid);
    }

    SUBCASE("norm is restored after collapse") {
        for (double rand : {0.1, 0.6, 0.99}) {
            CHECK(measure(split, presence, rand).state.squared_norm() ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("measure with a Kraus family") {
    KrausFamily weak = weak_presence_kraus(0.5);
    StateVector split = prepare_and_split(1);

    // P(yes) = eta/2 = 1/4.
    MeasureResult yes = measure(split, weak, 0.2);
    CHECK(yes.label == "found");
    CHECK(states_match_up_to_phase(yes.state, StateVector::basis(Site::Channel, 1)));

    MeasureResult no = measure(split, weak, 0.3);
    CHECK(no.label == "not_found");
    // K_no shrinks the channel amplitude by sqrt(1-eta).
    double expected_channel = std::sqrt(0.5) * kInvSqrt2 / std::sqrt(0.75);
    CHECK(std::abs(no.state.amp(Site::Channel, 1)) ==
          doctest::Approx(expected_channel).epsilon(1e-12));
    CHECK(no.state.squared_norm() == doctest::Approx(1.0).epsilon(1e-12));
}
