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

#include "qtad/oracle.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace qtad {

namespace {

// ---- Exact backend: amplitudes in Q(sqrt 2), probabilities in Q. ----------

// x + y*sqrt(2). Every amplitude the enumeration meets has x = 0 or y = 0;
// squares are then rational.
struct Q2 {
    Rational x{0};
    Rational y{0};

    Q2 operator+(const Q2& o) const { return {x + o.x, y + o.y}; }
    Q2 operator-(const Q2& o) const { return {x - o.x, y - o.y}; }
};

struct ExactBackend {
    using Amp = Q2;
    using Prob = Rational;

    static Amp zero() { return {}; }
    static Amp one() { return {Rational(1), Rational(0)}; }
    static Amp inv_sqrt2() { return {Rational(0), Rational(1, 2)}; }
    static Amp div_sqrt2(const Amp& a) { return {a.y, a.x / Rational(2)}; }
    static Amp mul(const Amp& a, const Amp& b) {
        return {a.x * b.x + Rational(2) * a.y * b.y, a.x * b.y + a.y * b.x};
    }
    static Prob square(const Amp& a) {
        detail::check(a.x.numerator() == 0 || a.y.numerator() == 0,
                      "oracle amplitude stays in a pure sqrt-2 form");
        return a.x * a.x + Rational(2) * a.y * a.y;
    }
    static Prob prob_zero() { return Rational(0); }
    static Prob prob_one() { return Rational(1); }
    static Prob half() { return Rational(1, 2); }
    static bool is_zero(const Prob& p) { return p.numerator() == 0; }
};

// ---- Floating backend for irrational weak-measurement strengths. ----------

struct FloatBackend {
    using Amp = double;
    using Prob = double;

    static Amp zero() { return 0.0; }
    static Amp one() { return 1.0; }
    static Amp inv_sqrt2() { return 0.70710678118654752440; }
    static Amp div_sqrt2(Amp a) { return a * 0.70710678118654752440; }
    static Amp mul(Amp a, Amp b) { return a * b; }
    static Prob square(Amp a) { return a * a; }
    static Prob prob_zero() { return 0.0; }
    static Prob prob_one() { return 1.0; }
    static Prob half() { return 0.5; }
    static bool is_zero(Prob p) { return p == 0.0; }
};

// Unnormalized state of one round for the transmitted bit: amplitudes at the
// vacuum, Alice's laboratory, the channel, and Bob's laboratory. Squared
// norms carry the measurement probabilities, so collapse branches just keep
// projected amplitudes.
template <typename B>
struct RoundState {
    typename B::Amp vac = B::zero();
    typename B::Amp alice = B::zero();
    typename B::Amp chan = B::zero();
    typename B::Amp bob = B::zero();
};

template <typename B>
struct RoundDistribution {
    // Index c*2 + d over the single-round detector outcomes.
    std::array<typename B::Prob, 4> cd{B::prob_zero(), B::prob_zero(), B::prob_zero(),
                                       B::prob_zero()};
    typename B::Prob bob_success = B::prob_zero();
    typename B::Prob d_fire = B::prob_zero();
};

template <typename B>
struct Enumerator {
    using Amp = typename B::Amp;
    using Prob = typename B::Prob;
    using Branch = std::pair<Prob, RoundState<B>>;

    AttackKind kind;
    Prob q;  // measurement rate (projective / intercept)
    Amp sqrt_eta;
    Amp sqrt_one_minus_eta;
    bool cover_inbound;

    std::vector<Branch> attack_branches(const Prob& f, const RoundState<B>& s) const {
        std::vector<Branch> out;
        switch (kind) {
            case AttackKind::NoAttack:
                out.push_back({f, s});
                break;
            case AttackKind::ProjectivePresence:
            case AttackKind::InterceptRead: {
                // The intercept triple behaves like the presence pair here:
                // the projector onto the untransmitted bit annihilates the
                // state, so only the current-bit branch carries mass.
                Prob skip = f * (B::prob_one() - q);
                if (!B::is_zero(skip)) out.push_back({skip, s});
                Prob measured = f * q;
                if (!B::is_zero(measured)) {
                    RoundState<B> found;
                    found.chan = s.chan;
                    RoundState<B> missed = s;
                    missed.chan = B::zero();
                    out.push_back({measured, found});
                    out.push_back({measured, missed});
                }
                break;
            }
            case AttackKind::WeakPresence: {
                RoundState<B> yes;
                yes.chan = B::mul(s.chan, sqrt_eta);
                RoundState<B> no = s;
                no.chan = B::mul(s.chan, sqrt_one_minus_eta);
                out.push_back({f, yes});
                out.push_back({f, no});
                break;
            }
        }
        return out;
    }

    void detector(const Prob& f, const RoundState<B>& s,
                  RoundDistribution<B>* dist) const {
        Prob pc = f * B::square(B::div_sqrt2(s.alice + s.chan));
        Prob pd = f * B::square(B::div_sqrt2(s.alice - s.chan));
        Prob pnone = f * B::square(s.vac);
        dist->cd[2] = dist->cd[2] + pc;     // (c,d) = (1,0)
        dist->cd[1] = dist->cd[1] + pd;     // (c,d) = (0,1)
        dist->cd[0] = dist->cd[0] + pnone;  // neither detector
        dist->d_fire = dist->d_fire + pd;
    }

    RoundDistribution<B> round(bool mirrored) const {
        RoundDistribution<B> dist;
        RoundState<B> initial;
        initial.alice = B::inv_sqrt2();
        initial.chan = B::inv_sqrt2();

        for (auto& [f, s] : attack_branches(B::prob_one(), initial)) {
            if (mirrored) {
                // Mirroring returns the package unchanged; the return leg is
                // exposed again when the policy covers both transits.
                std::vector<Branch> legs =
                    cover_inbound ? attack_branches(f, s) : std::vector<Branch>{{f, s}};
                for (auto& [f2, s2] : legs) detector(f2, s2, &dist);
            } else {
                // Bob reads: the channel amplitude enters his laboratory.
                RoundState<B> inside = s;
                inside.bob = inside.chan;
                inside.chan = B::zero();
                Prob success = f * B::square(inside.bob);
                dist.bob_success = dist.bob_success + success;
                dist.cd[0] = dist.cd[0] + success;  // Bob keeps it; detectors silent
                RoundState<B> eps = inside;
                eps.bob = B::zero();
                detector(f, eps, &dist);
            }
        }
        return dist;
    }
};

template <typename B>
void enumerate_pair(const Enumerator<B>& enumerator,
                    std::array<typename B::Prob, 16>* masses,
                    typename B::Prob* mirror_d, typename B::Prob* read_success) {
    RoundDistribution<B> mirror = enumerator.round(true);
    RoundDistribution<B> read = enumerator.round(false);

    // Exactly one round of each pair is mirrored, first or second with equal
    // probability; rounds are independent given the order.
    for (int first = 0; first < 4; ++first) {
        int c1 = first >> 1, d1 = first & 1;
        for (int second = 0; second < 4; ++second) {
            int c2 = second >> 1, d2 = second & 1;
            int index = c1 * 8 + c2 * 4 + d1 * 2 + d2;
            (*masses)[index] = (*masses)[index] +
                               B::half() * (mirror.cd[first] * read.cd[second] +
                                            read.cd[first] * mirror.cd[second]);
        }
    }
    *mirror_d = mirror.d_fire;
    *read_success = read.bob_success;
}

bool exact_capable(const OracleAttack& attack) {
    return attack.kind != AttackKind::WeakPresence || attack.eta == Rational(0) ||
           attack.eta == Rational(1);
}

PairRecord record_from_index(int i) {
    return PairRecord{static_cast<std::uint8_t>((i >> 3) & 1),
                      static_cast<std::uint8_t>((i >> 2) & 1),
                      static_cast<std::uint8_t>((i >> 1) & 1),
                      static_cast<std::uint8_t>(i & 1)};
}

}  // namespace

Rational ExactDistribution::probability_exact(const PairRecord& r) const {
    detail::check(exact.has_value(), "exact oracle values were computed");
    return (*exact)[r.index()];
}

double ExactDistribution::off_support_mass() const {
    double mass = 0.0;
    const NullDistribution& null = exact_null();
    for (int i = 0; i < kPairTupleCount; ++i) {
        if (null.support_slot(record_from_index(i)) < 0) mass += p[i];
    }
    return mass;
}

Rational ExactDistribution::off_support_mass_exact() const {
    detail::check(exact.has_value(), "exact oracle values were computed");
    Rational mass(0);
    const NullDistribution& null = exact_null();
    for (int i = 0; i < kPairTupleCount; ++i) {
        if (null.support_slot(record_from_index(i)) < 0) mass += (*exact)[i];
    }
    return mass;
}

OracleAttack OracleAttack::from_strategy(const AttackStrategy& attack) {
    return OracleAttack{attack.kind, rational_from_double(attack.q),
                        rational_from_double(attack.eta), attack.transits};
}

void OracleAttack::validate() const {
    if (q < Rational(0) || q > Rational(1) || eta < Rational(0) || eta > Rational(1)) {
        throw ConfigError("attack parameters must lie in [0, 1]");
    }
}

ExactDistribution oracle_pair_distribution(const OracleAttack& attack) {
    attack.validate();
    ExactDistribution result;
    if (exact_capable(attack)) {
        Enumerator<ExactBackend> enumerator{
            attack.kind,
            attack.q,
            attack.eta == Rational(1) ? ExactBackend::one() : ExactBackend::zero(),
            attack.eta == Rational(1) ? ExactBackend::zero() : ExactBackend::one(),
            attack.transits == TransitPolicy::BothTransits,
        };
        std::array<Rational, 16> masses{};
        Rational mirror_d(0), read_success(0);
        enumerate_pair(enumerator, &masses, &mirror_d, &read_success);

        Rational total(0);
        for (const Rational& m : masses) total += m;
        detail::check(total == Rational(1), "exact pair masses sum to one");

        result.exact = masses;
        for (int i = 0; i < kPairTupleCount; ++i) result.p[i] = to_double(masses[i]);
        result.mirror_d_exact = mirror_d;
        result.mirror_d = to_double(mirror_d);
        result.read_success_exact = read_success;
        result.read_success = to_double(read_success);
        result.error_bound = 0.0;
        return result;
    }

    double eta = to_double(attack.eta);
    Enumerator<FloatBackend> enumerator{
        attack.kind,
        to_double(attack.q),
        std::sqrt(eta),
        std::sqrt(1.0 - eta),
        attack.transits == TransitPolicy::BothTransits,
    };
    std::array<double, 16> masses{};
    double mirror_d = 0.0, read_success = 0.0;
    enumerate_pair(enumerator, &masses, &mirror_d, &read_success);

    double total = 0.0;
    for (double m : masses) total += m;
    detail::check(std::abs(total - 1.0) < 1e-12, "floating pair masses sum to one");

    result.p = masses;
    result.mirror_d = mirror_d;
    result.read_success = read_success;
    // A leaf probability is a product of at most ~20 doubles; the accumulated
    // relative rounding error stays far below this bound.
    result.error_bound = 1e-13;
    return result;
}

ExactDistribution oracle_pair_distribution(const AttackStrategy& attack) {
    return oracle_pair_distribution(OracleAttack::from_strategy(attack));
}

Rational expected_rounds_per_bit_exact(const AttackStrategy& attack) {
    ExactDistribution dist = oracle_pair_distribution(attack);
    detail::check(dist.is_exact(), "expected_rounds_per_bit_exact needs exact mode");
    const Rational& s = *dist.read_success_exact;
    detail::check(s > Rational(0), "read round delivers with positive probability");
    // From a pair boundary: both orders restart after two rounds on failure,
    // the read-first order delivers after one round on success:
    // E = (1/2)[s + (1-s)(2+E)] + (1/2)[2s + (1-s)(2+E)]  =>  E = 2/s - 1/2.
    return Rational(2) / s - Rational(1, 2);
}

double expected_rounds_per_bit(const AttackStrategy& attack) {
    ExactDistribution dist = oracle_pair_distribution(attack);
    detail::check(dist.read_success > 0, "read round delivers with positive probability");
    return 2.0 / dist.read_success - 0.5;
}

double total_variation(const std::array<double, 16>& a, const std::array<double, 16>& b) {
    double tv = 0.0;
    for (int i = 0; i < kPairTupleCount; ++i) tv += std::abs(a[i] - b[i]);
    return tv / 2.0;
}

}  // namespace qtad
