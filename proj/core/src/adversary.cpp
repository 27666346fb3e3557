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

#include "qtad/adversary.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <optional>

namespace qtad {

namespace {

// Channel-factor index order: 0 channel-vacuum, 1 (Channel,0), 2 (Channel,1).
// In the 7-dimensional space these are basis indices 0, 3, 4.
constexpr int kChannelIdx[3] = {0, 3, 4};
constexpr int kLabIdx[4] = {1, 2, 5, 6};

void validate_rate(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw ConfigError(std::string(name) + " must lie in [0, 1]");
    }
}

}  // namespace

AttackStrategy AttackStrategy::none() { return AttackStrategy{}; }

AttackStrategy AttackStrategy::projective_presence(double q, TransitPolicy t) {
    validate_rate(q, "q");
    return AttackStrategy{AttackKind::ProjectivePresence, q, 0.0, t};
}

AttackStrategy AttackStrategy::weak_presence(double eta, TransitPolicy t) {
    validate_rate(eta, "eta");
    return AttackStrategy{AttackKind::WeakPresence, 0.0, eta, t};
}

AttackStrategy AttackStrategy::intercept_read(double q, TransitPolicy t) {
    validate_rate(q, "q");
    return AttackStrategy{AttackKind::InterceptRead, q, 0.0, t};
}

Operator LocalOperator::lifted() const {
    Operator out = Operator::Zero();
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            out(kChannelIdx[r], kChannelIdx[c]) = block(r, c);
        }
    }
    Complex scalar = block(0, 0);
    for (int idx : kLabIdx) out(idx, idx) = scalar;
    return out;
}

MeasurementFamily lift_family(
    const std::vector<std::pair<std::string, LocalMatrix>>& blocks) {
    std::vector<MeasurementFamily::Element> lifted;
    lifted.reserve(blocks.size());
    for (const auto& [label, block] : blocks) {
        lifted.emplace_back(label, LocalOperator{block}.lifted());
    }
    return MeasurementFamily::povm(std::move(lifted));
}

bool is_lifted_local(const Operator& op, double tol) {
    // No mixing between the channel factor and the laboratories.
    for (int r : kChannelIdx) {
        for (int c : kLabIdx) {
            if (std::abs(op(r, c)) > tol || std::abs(op(c, r)) > tol) return false;
        }
    }
    // Laboratory block is <vac|op|vac> times the identity.
    Complex scalar = op(0, 0);
    for (int r : kLabIdx) {
        for (int c : kLabIdx) {
            Complex expected = (r == c) ? scalar : Complex(0.0);
            if (std::abs(op(r, c) - expected) > tol) return false;
        }
    }
    return true;
}

double distinguishability(const MeasurementFamily& fam, const StateVector& psi,
                          const StateVector& phi) {
    double best = 0.0;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        if (!is_lifted_local(fam.element(i))) {
            throw NotLocalError("family element '" + fam.label(i) +
                                "' is not channel-local");
        }
        double gap = std::abs(expectation(psi, fam.element(i)) -
                              expectation(phi, fam.element(i)));
        best = std::max(best, gap);
    }
    return best;
}

bool is_nondisturbing(const MeasurementFamily& fam, const StateVector& s) {
    for (std::size_t i = 0; i < fam.size(); ++i) {
        double lambda = expectation(s, fam.element(i));
        Amplitudes residual = fam.element(i) * s.amps() - lambda * s.amps();
        if (residual.norm() >= kAlgebraTol) return false;
    }
    return true;
}

namespace {

LocalMatrix presence_block() {
    LocalMatrix b = LocalMatrix::Zero();
    b(1, 1) = 1.0;
    b(2, 2) = 1.0;
    return b;
}

}  // namespace

const MeasurementFamily& presence_family() {
    static const MeasurementFamily family = [] {
        LocalMatrix found = presence_block();
        LocalMatrix rest = LocalMatrix::Identity() - found;
        return lift_family({{"found", found}, {"not_found", rest}});
    }();
    return family;
}

const MeasurementFamily& intercept_family() {
    static const MeasurementFamily family = [] {
        LocalMatrix b0 = LocalMatrix::Zero();
        b0(1, 1) = 1.0;
        LocalMatrix b1 = LocalMatrix::Zero();
        b1(2, 2) = 1.0;
        LocalMatrix rest = LocalMatrix::Identity() - b0 - b1;
        return lift_family({{"read_bit0", b0}, {"read_bit1", b1}, {"not_found", rest}});
    }();
    return family;
}

KrausFamily weak_presence_kraus(double eta) {
    validate_rate(eta, "eta");
    Operator found = LocalOperator{presence_block()}.lifted();
    Operator k_yes = std::sqrt(eta) * found;
    Operator k_no = std::sqrt(1.0 - eta) * found + (Operator::Identity() - found);
    return KrausFamily::create({{"found", k_yes}, {"not_found", k_no}});
}

std::pair<TracyObservation, StateVector> apply_attack(const AttackStrategy& strategy,
                                                      const StateVector& s, Transit transit,
                                                      RandomStream& rng, long round_index) {
    TracyObservation obs;
    obs.round_index = round_index;
    if (strategy.kind == AttackKind::NoAttack || !strategy.covers(transit)) {
        return {obs, s};
    }

    switch (strategy.kind) {
        case AttackKind::ProjectivePresence: {
            if (rng.next() >= strategy.q) return {obs, s};
            MeasureResult r = measure(s, presence_family(), rng.next());
            obs.outcome = r.label;
            obs.found = (r.index == 0) ? Found::Yes : Found::No;
            return {obs, r.state};
        }
        case AttackKind::InterceptRead: {
            if (rng.next() >= strategy.q) return {obs, s};
            MeasureResult r = measure(s, intercept_family(), rng.next());
            obs.outcome = r.label;
            obs.found = (r.index <= 1) ? Found::Yes : Found::No;
            return {obs, r.state};
        }
        case AttackKind::WeakPresence: {
            // Sessions keep one strength for their whole run; rebuilding the
            // Kraus pair per transit would dominate the round loop.
            thread_local double cached_eta = -1.0;
            thread_local std::optional<KrausFamily> cached;
            if (!cached || cached_eta != strategy.eta) {
                cached = weak_presence_kraus(strategy.eta);
                cached_eta = strategy.eta;
            }
            MeasureResult r = measure(s, *cached, rng.next());
            obs.outcome = r.label;
            obs.found = (r.index == 0) ? Found::Yes : Found::No;
            return {obs, r.state};
        }
        case AttackKind::NoAttack:
            break;
    }
    return {obs, s};
}

namespace {

// Uniform point on the k-simplex via normalized exponentials.
std::vector<double> random_simplex(RandomStream& rng, int k) {
    std::vector<double> x(k);
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        double u = rng.next();
        x[i] = -std::log(1.0 - u);
        total += x[i];
    }
    for (double& v : x) v /= total;
    return x;
}

Complex random_unit_complex(RandomStream& rng) {
    double angle = 2.0 * M_PI * rng.next();
    return Complex(std::cos(angle), std::sin(angle));
}

}  // namespace

MeasurementFamily random_nondisturbing_local_family(RandomStream& rng, int bit) {
    detail::check(bit == 0 || bit == 1, "payload bit is 0 or 1");
    // The eigenvector condition forces each block to be diagonal in the basis
    // {channel-vacuum, (Channel,bit), (Channel,1-bit)} with the first two
    // entries equal; only the eigenvalue vectors are free.
    int k = 2 + static_cast<int>(rng.next() * 4.0);  // 2..5 elements
    std::vector<double> shared = random_simplex(rng, k);
    std::vector<double> other = random_simplex(rng, k);
    int bit_idx = 1 + bit;
    int other_idx = 1 + (1 - bit);
    std::vector<std::pair<std::string, LocalMatrix>> blocks;
    for (int i = 0; i < k; ++i) {
        LocalMatrix b = LocalMatrix::Zero();
        b(0, 0) = shared[i];
        b(bit_idx, bit_idx) = shared[i];
        b(other_idx, other_idx) = other[i];
        blocks.emplace_back("e" + std::to_string(i), b);
    }
    return lift_family(blocks);
}

MeasurementFamily random_local_family(RandomStream& rng, int elements) {
    detail::check(elements >= 2, "a family needs at least two elements");
    // Random positive blocks M_i = G_i^dag G_i, then the symmetric
    // normalization b_i = S^{-1/2} M_i S^{-1/2} with S = sum M_i.
    std::vector<LocalMatrix> raw(elements);
    LocalMatrix sum = LocalMatrix::Zero();
    for (auto& m : raw) {
        LocalMatrix g;
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                g(r, c) = std::sqrt(-2.0 * std::log(1.0 - rng.next())) *
                          random_unit_complex(rng);
            }
        }
        m = g.adjoint() * g;
        sum += m;
    }
    Eigen::SelfAdjointEigenSolver<LocalMatrix> solver(sum);
    LocalMatrix inv_sqrt = solver.operatorInverseSqrt();
    std::vector<std::pair<std::string, LocalMatrix>> blocks;
    for (int i = 0; i < elements; ++i) {
        LocalMatrix b = inv_sqrt * raw[i] * inv_sqrt;
        b = (LocalMatrix(b) + LocalMatrix(b.adjoint())) / 2.0;  // scrub rounding skew
        blocks.emplace_back("e" + std::to_string(i), b);
    }
    return lift_family(blocks);
}

double expected_found_per_round(const AttackStrategy& strategy) {
    double per_transit = 0.0;
    switch (strategy.kind) {
        case AttackKind::NoAttack:
            return 0.0;
        case AttackKind::ProjectivePresence:
        case AttackKind::InterceptRead:
            per_transit = strategy.q;
            break;
        case AttackKind::WeakPresence:
            per_transit = strategy.eta;
            break;
    }
    // Outbound transits find the half wave with probability 1/2. With both
    // transits covered, the return leg of a mirrored round (half of all
    // rounds) adds another per_transit/2 on average.
    if (strategy.transits == TransitPolicy::BothTransits) {
        return 0.75 * per_transit;
    }
    return 0.5 * per_transit;
}

double tracy_estimate(const AttackStrategy& strategy, long found_count) {
    double denom = expected_found_per_round(strategy);
    if (denom <= 1e-12) return 0.0;
    return static_cast<double>(found_count) / denom;
}

}  // namespace qtad
