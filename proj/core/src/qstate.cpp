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

#include "qtad/qstate.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace qtad {

StateVector StateVector::from_amplitudes(const Amplitudes& a) {
    for (int i = 0; i < kDim; ++i) {
        if (!std::isfinite(a[i].real()) || !std::isfinite(a[i].imag())) {
            throw InvalidStateError("non-finite amplitude at basis index " +
                                    std::to_string(i));
        }
    }
    return StateVector(a);
}

StateVector normalize(const StateVector& s) {
    double n = s.norm();
    if (n <= kExactTol) throw ZeroVectorError("cannot normalize a zero vector");
    return StateVector::from_amplitudes(s.amps() / n);
}

Complex inner_product(const StateVector& x, const StateVector& y) {
    return x.amps().dot(y.amps());  // Eigen's dot conjugates the left factor
}

bool is_hermitian(const Operator& op, double tol) {
    return (op - op.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue(const Operator& op) {
    Eigen::SelfAdjointEigenSolver<Operator> solver(op, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double expectation(const StateVector& s, const Operator& op) {
    if (!is_hermitian(op)) throw NotHermitianError("expectation of a non-Hermitian operator");
    Complex value = s.amps().dot(op * s.amps());
    return value.real();
}

namespace {

void validate_povm(const std::vector<MeasurementFamily::Element>& elements) {
    if (elements.empty()) throw InvalidFamilyError("empty measurement family");
    Operator sum = Operator::Zero();
    for (const auto& [label, op] : elements) {
        if (!is_hermitian(op)) {
            throw InvalidFamilyError("POVM element '" + label + "' is not Hermitian");
        }
        if (min_eigenvalue(op) < -kAlgebraTol) {
            throw InvalidFamilyError("POVM element '" + label + "' is not positive");
        }
        sum += op;
    }
    if ((sum - Operator::Identity()).cwiseAbs().maxCoeff() > kAlgebraTol) {
        throw InvalidFamilyError("POVM elements do not sum to the identity");
    }
}

bool is_projective_family(const std::vector<MeasurementFamily::Element>& elements) {
    for (std::size_t i = 0; i < elements.size(); ++i) {
        const Operator& p = elements[i].second;
        if ((p * p - p).cwiseAbs().maxCoeff() > kAlgebraTol) return false;
        for (std::size_t j = i + 1; j < elements.size(); ++j) {
            if ((p * elements[j].second).cwiseAbs().maxCoeff() > kAlgebraTol) return false;
        }
    }
    return true;
}

}  // namespace

MeasurementFamily MeasurementFamily::povm(std::vector<Element> elements) {
    validate_povm(elements);
    bool projective = is_projective_family(elements);
    return MeasurementFamily(std::move(elements), projective);
}

MeasurementFamily MeasurementFamily::projective(std::vector<Element> elements) {
    validate_povm(elements);
    if (!is_projective_family(elements)) {
        throw InvalidFamilyError("family is not projective (idempotence/orthogonality)");
    }
    return MeasurementFamily(std::move(elements), true);
}

KrausFamily KrausFamily::create(std::vector<Element> elements) {
    if (elements.empty()) throw InvalidFamilyError("empty Kraus family");
    Operator sum = Operator::Zero();
    for (const auto& [label, k] : elements) {
        (void)label;
        sum += k.adjoint() * k;
    }
    if ((sum - Operator::Identity()).cwiseAbs().maxCoeff() > kAlgebraTol) {
        throw InvalidFamilyError("Kraus family is not complete (sum K^dag K != 1)");
    }
    return KrausFamily(std::move(elements));
}

namespace {

// Shared interval-inversion collapse. `mapped(i)` is the unnormalized
// post-outcome vector for element i, whose squared norm is its probability.
template <typename MappedFn>
std::pair<std::size_t, Amplitudes> collapse(std::size_t count, const MappedFn& mapped,
                                            double rand) {
    // Families in this simulator stay small; a fixed scratch buffer avoids
    // churn in the round loop.
    constexpr std::size_t kMaxElements = 8;
    detail::check(count <= kMaxElements, "measurement family fits the scratch buffer");
    std::array<Amplitudes, kMaxElements> branches;
    double total = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        branches[i] = mapped(i);
        total += branches[i].squaredNorm();
    }
    if (std::abs(total - 1.0) > kAlgebraTol) {
        throw ZeroVectorError("outcome probabilities sum to " + std::to_string(total));
    }

    double cumulative = 0.0;
    std::size_t picked = count;  // last nonzero branch wins on rounding spill
    for (std::size_t i = 0; i < count; ++i) {
        double p = branches[i].squaredNorm();
        if (p <= 0.0) continue;
        if (rand < cumulative + p) {
            picked = i;
            break;
        }
        cumulative += p;
        picked = i;
    }
    detail::check(picked < count, "measurement selected an outcome");
    return {picked, branches[picked] / branches[picked].norm()};
}

}  // namespace

MeasureResult measure(const StateVector& s, const MeasurementFamily& fam, double rand) {
    if (!fam.is_projective()) {
        throw InvalidFamilyError(
            "collapse with a non-projective POVM; use a KrausFamily instead");
    }
    auto [picked, post] = collapse(
        fam.size(), [&](std::size_t i) -> Amplitudes { return fam.element(i) * s.amps(); },
        rand);
    return MeasureResult{picked, fam.label(picked), StateVector::from_amplitudes(post)};
}

MeasureResult measure(const StateVector& s, const KrausFamily& fam, double rand) {
    auto [picked, post] = collapse(
        fam.size(), [&](std::size_t i) -> Amplitudes { return fam.element(i) * s.amps(); },
        rand);
    return MeasureResult{picked, fam.label(picked), StateVector::from_amplitudes(post)};
}

}  // namespace qtad
