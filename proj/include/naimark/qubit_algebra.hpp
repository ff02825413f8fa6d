// Copyright 2026 The Naimark Authors
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

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace naimark {

using Complex = std::complex<double>;

/// Dense 2x2 complex matrix, the carrier for every qubit operator.
using Matrix2 = Eigen::Matrix2cd;

/// Absolute tolerance for exact algebraic identities at qubit scale.
inline constexpr double kAlgTol = 1e-12;
/// Threshold used for rank and span decisions.
inline constexpr double kRankTol = 1e-9;

/// Coefficients of a qubit operator in the basis {I, sigma_1, sigma_2, sigma_3}:
/// E = (e0 I + e . sigma) / 2.
struct PauliVector {
    double e0 = 0.0;
    std::array<double, 3> e{0.0, 0.0, 0.0};

    double norm() const;
    double dot(const PauliVector &other) const;
};

PauliVector operator+(const PauliVector &a, const PauliVector &b);
PauliVector operator-(const PauliVector &a, const PauliVector &b);
PauliVector operator*(double s, const PauliVector &a);

/// The four Pauli matrices, sigma(0) being the identity.
const Matrix2 &sigma(int mu);

/// Coefficient pair (c, d) of a rank-1 positive matrix
/// [[|c|^2, conj(c) d], [c conj(d), |d|^2]].
struct CdPair {
    Complex c;
    Complex d;

    bool is_zero() const { return c == Complex{} && d == Complex{}; }
};

/// Gram matrix [[|c|^2, conj(c) d], [c conj(d), |d|^2]] of a coefficient pair.
Matrix2 gram(const CdPair &p);

/// Decomposition E = E+ + E- into rank <= 1 positive parts, with the
/// coefficient pairs that generate them.
struct SpectralSplit {
    Matrix2 e_plus;
    Matrix2 e_minus;
    CdPair plus;
    CdPair minus;
};

bool is_hermitian(const Matrix2 &m, double tol = kAlgTol);

/// e^mu = tr(E sigma_mu). Throws std::domain_error on non-Hermitian input.
PauliVector pauli_decompose(const Matrix2 &m, double tol = kAlgTol);

/// (e0 I + e . sigma) / 2.
Matrix2 pauli_compose(const PauliVector &v);

/// True iff E is Hermitian and ||e|| <= min(e0, 2 - e0) + tol.
bool is_effect(const Matrix2 &m, double tol = kAlgTol);
bool is_effect(const PauliVector &v, double tol = kAlgTol);

/// Number of eigenvalues (e0 +- ||e||)/2 above tol.
int effect_rank(const Matrix2 &m, double tol = kRankTol);
int effect_rank(const PauliVector &v, double tol = kRankTol);

/// Eigenvalues (e0 - ||e||)/2 <= (e0 + ||e||)/2 of a Hermitian matrix.
std::array<double, 2> eigenvalues(const Matrix2 &m);

/// Spectral split of an effect into the two rank-1 branches.
///
/// The coefficient formulas divide by ||e|| +- e3, so they are evaluated in a
/// cancellation-free form: whichever of ||e|| +- e3 is small is recovered as
/// (e1^2 + e2^2) / (||e|| -+ e3). The axis-aligned branch (e1 = e2 = 0,
/// including ||e|| = 0 where E+- = (e0/4)(I +- sigma_3)) uses the sign
/// convention sgn(0) = +1. Every returned pair is canonical (see
/// canonicalize_cd) or zero.
///
/// Throws std::domain_error if the input is not an effect within tol.
SpectralSplit spectral_split(const Matrix2 &m, double tol = kRankTol);

/// Multiplies (c, d) by a unit phase so that c > 0, or c = 0 and d > 0.
/// Throws std::domain_error for (0, 0).
CdPair canonicalize_cd(const CdPair &p);

/// True iff (c, d) lies in (R+ x C) u ({0} x R+) exactly.
bool is_canonical(const CdPair &p);

double max_abs(const Matrix2 &m);

}  // namespace naimark
