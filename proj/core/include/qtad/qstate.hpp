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

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "qtad/errors.hpp"

namespace qtad {

// The protocol lives in a 7-dimensional Hilbert space: the 0-particle state
// plus one particle at one of three sites carrying one payload bit.
//
// Basis order (fixed, transcripts and matrices depend on it):
//   0  vacuum
//   1  (AliceLab, bit 0)      2  (AliceLab, bit 1)
//   3  (Channel,  bit 0)      4  (Channel,  bit 1)
//   5  (BobLab,   bit 0)      6  (BobLab,   bit 1)
inline constexpr int kDim = 7;

using Complex = std::complex<double>;
using Amplitudes = Eigen::Matrix<Complex, kDim, 1>;
using Operator = Eigen::Matrix<Complex, kDim, kDim>;

/// Tolerance for algebraic invariants (norms, completeness, Hermiticity).
inline constexpr double kAlgebraTol = 1e-9;
/// Tolerance for quantities that are exactly zero in the model.
inline constexpr double kExactTol = 1e-12;

enum class Site : int { AliceLab = 0, Channel = 1, BobLab = 2 };

constexpr int vacuum_index() { return 0; }

constexpr int basis_index(Site site, int bit) {
    return 1 + 2 * static_cast<int>(site) + bit;
}

/// Pure state over the 7-dimensional basis. Construction validates that all
/// amplitudes are finite; unit norm is the caller's business (normalize()
/// exists, and every measurement returns a unit vector).
class StateVector {
  public:
    StateVector() : amp_(Amplitudes::Zero()) { amp_[vacuum_index()] = 1.0; }

    static StateVector vacuum() { return StateVector(); }

    static StateVector basis(int index) {
        detail::check(index >= 0 && index < kDim, "basis index in range");
        Amplitudes a = Amplitudes::Zero();
        a[index] = 1.0;
        return StateVector(a);
    }

    static StateVector basis(Site site, int bit) {
        return basis(basis_index(site, bit));
    }

    static StateVector from_amplitudes(const Amplitudes& a);

    const Amplitudes& amps() const { return amp_; }
    Complex amp(int index) const { return amp_[index]; }
    Complex amp(Site site, int bit) const { return amp_[basis_index(site, bit)]; }

    double squared_norm() const { return amp_.squaredNorm(); }
    double norm() const { return amp_.norm(); }

  private:
    explicit StateVector(Amplitudes a) : amp_(std::move(a)) {}
    Amplitudes amp_;
};

/// s / ||s||. Throws ZeroVectorError when ||s|| <= 1e-12.
StateVector normalize(const StateVector& s);

/// <x|y>, conjugate-linear in the first argument.
Complex inner_product(const StateVector& x, const StateVector& y);

/// <s|op|s> for Hermitian op. Throws NotHermitianError if op deviates from
/// its adjoint by more than the algebraic tolerance.
double expectation(const StateVector& s, const Operator& op);

bool is_hermitian(const Operator& op, double tol = kAlgebraTol);

/// Smallest eigenvalue of a Hermitian operator (positivity checks).
double min_eigenvalue(const Operator& op);

/// POVM: positive elements summing to the identity. When every element is
/// additionally idempotent and the elements are mutually orthogonal, the
/// family is flagged projective and measure() may collapse with it.
class MeasurementFamily {
  public:
    using Element = std::pair<std::string, Operator>;

    /// Validates positivity and completeness.
    static MeasurementFamily povm(std::vector<Element> elements);
    /// Validates positivity, completeness, idempotence and orthogonality.
    static MeasurementFamily projective(std::vector<Element> elements);

    std::size_t size() const { return elements_.size(); }
    const std::string& label(std::size_t i) const { return elements_[i].first; }
    const Operator& element(std::size_t i) const { return elements_[i].second; }
    bool is_projective() const { return projective_; }

  private:
    MeasurementFamily(std::vector<Element> e, bool projective)
        : elements_(std::move(e)), projective_(projective) {}
    std::vector<Element> elements_;
    bool projective_;
};

/// Kraus family {K_i} with sum K_i^dag K_i = identity; outcome i occurs with
/// probability ||K_i s||^2 and maps s to K_i s (normalized).
class KrausFamily {
  public:
    using Element = std::pair<std::string, Operator>;

    static KrausFamily create(std::vector<Element> elements);

    std::size_t size() const { return elements_.size(); }
    const std::string& label(std::size_t i) const { return elements_[i].first; }
    const Operator& element(std::size_t i) const { return elements_[i].second; }

  private:
    explicit KrausFamily(std::vector<Element> e) : elements_(std::move(e)) {}
    std::vector<Element> elements_;
};

struct MeasureResult {
    std::size_t index;
    std::string label;
    StateVector state;
};

/// Born-rule measurement. [0,1) is partitioned into consecutive intervals in
/// element order, one per outcome, with lengths equal to the outcome
/// probabilities; `rand` selects the interval it falls into. Zero-width
/// intervals are unreachable. Deterministic given `rand`.
///
/// The MeasurementFamily overload requires a projective family (the collapse
/// rule "project then renormalize" is only canonical there); use a
/// KrausFamily for general instruments.
MeasureResult measure(const StateVector& s, const MeasurementFamily& fam, double rand);
MeasureResult measure(const StateVector& s, const KrausFamily& fam, double rand);

}  // namespace qtad
