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
#include <optional>

#include "naimark/joint.hpp"

namespace naimark::trinary {

/// Best known threshold for lambda = eta from the full characterization of
/// symmetric trinary pairs; this library's covariant ansatz stops at 4/5.
inline constexpr double kReferenceThreshold = 0.866;

/// U_k = R(2 k pi / 3), the Z_3 action on the qubit.
const Matrix2 &rotation(int k);

/// (k mod 3) in {0, 1, 2}.
int mod3(int k);

/// The noisy trine E^lambda: E_k = U_k diag((1+lambda)/3, (1-lambda)/3) U_k*.
DiscretePovm build_trinary(double lambda);

/// The target family B^eta with B_0 = eta (2/3)|psi><psi| + (1 - eta) I/3 and
/// B_k = U_k B_0 U_k*.
DiscretePovm build_target(double eta, const Eigen::Vector2cd &psi);

/// Covariant minimal dilation of E^lambda on C^2 (+) C^2 (+) C^2 for lambda < 1.
struct CovariantDilation {
    double lambda = 0.0;
    /// 6 x 2 isometry with rows |k+>, |k->, k = 0, 1, 2.
    Isometry j;
    std::array<MatrixX, 3> projections;
    /// V_k maps block l onto block l + k.
    std::array<MatrixX, 3> shifts;

    /// Same rows packaged as a NaimarkDilation with m = (2, 2, 2).
    NaimarkDilation as_dilation() const;
};

/// Throws std::domain_error for lambda = 1 (rank-1 trine, use build_dilation)
/// and std::invalid_argument outside [0, 1].
CovariantDilation build_covariant_dilation(double lambda);

/// M^lambda = (1/3) [[1 + l, sqrt(1 - l^2)], [sqrt(1 - l^2), 1 - l]].
Matrix2 schur_weight(double lambda);

/// Entrywise reciprocal of M^lambda. Throws std::domain_error at lambda = 1.
Matrix2 schur_inverse_weight(double lambda);

/// Entrywise product.
Matrix2 schur(const Matrix2 &a, const Matrix2 &b);

/// A = (U_k* N U_k) * N^lambda, the block operator of N_kj in block k.
Matrix2 schur_recover_A(const Matrix2 &n_kj, int k, double lambda);

/// N_kj = U_k (M^lambda * A) U_k*.
Matrix2 schur_compose_N(const Matrix2 &a, int k, double lambda);

/// f(lambda) = lambda^2 / (2 (1 - sqrt(1 - lambda^2))), evaluated as
/// (1 + sqrt(1 - lambda^2)) / 2 so that f(0) = 1.
double trinary_threshold(double lambda);

struct AnsatzSolution {
    double d;
    double e;
};

/// Diagonal covariant ansatz A = diag(d, 2/3 - d) for the pair
/// (E^lambda, B^eta) with psi = |->. Returns nullopt iff eta > f(lambda) + tol;
/// d is clamped at 0 inside the tolerance band.
std::optional<AnsatzSolution> trinary_ansatz_solve(double lambda, double eta,
                                                   double tol = kAlgTol);

/// Covariant joint POVM grid N_kj of (E^lambda, B^eta) from the ansatz.
/// psi must be |-> or |+> up to a phase. Throws std::domain_error when the
/// ansatz has no solution and std::invalid_argument for other psi.
JointPovm build_trinary_joint(double lambda, double eta,
                              const Eigen::Vector2cd &psi = Eigen::Vector2cd(0.0, 1.0));

/// N~_kj = (1/3) sum_s U_s* N_{k+s, j+s} U_s; covariant with the same marginals.
JointPovm symmetrize(const JointPovm &n);

/// max_{k, l, j} |N_{k+l, j+l} - U_l N_kj U_l*|.
double covariance_residual(const JointPovm &n);

}  // namespace naimark::trinary
