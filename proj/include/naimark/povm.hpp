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

#include <stdexcept>
#include <string>
#include <vector>

#include "naimark/qubit_algebra.hpp"

namespace naimark {

/// Raised when a list of operators fails to be a POVM.
class PovmError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Finite-outcome qubit POVM. Outcomes are the 0-based positions in `effects`.
struct DiscretePovm {
    std::vector<Matrix2> effects;

    size_t size() const { return effects.size(); }
    const Matrix2 &operator[](size_t i) const { return effects[i]; }

    static DiscretePovm from_pauli(const std::vector<PauliVector> &vs);
    std::vector<PauliVector> pauli() const;
};

/// Per-outcome ranks; entries are 1 or 2 (0 only for explicitly allowed zero effects).
struct MultiplicityVector {
    std::vector<int> m;

    int l1() const;
    size_t size() const { return m.size(); }
    int operator[](size_t i) const { return m[i]; }
    bool operator==(const MultiplicityVector &) const = default;
};

/// Columns of the isometry of a rank-1 POVM; row k is the pair (c_k, d_k).
struct CdVectors {
    std::vector<Complex> c;
    std::vector<Complex> d;
};

struct PovmOptions {
    double tol = kRankTol;
    bool allow_zero = false;
};

/// Checks effect validity and normalization, returns the multiplicity vector.
/// Throws PovmError describing the first violation.
MultiplicityVector validate_povm(const DiscretePovm &p, const PovmOptions &opts = {});

/// E_k = gram(c_k, d_k). Throws std::domain_error unless c, d are orthonormal
/// (within tol), every pair is canonical and no pair is zero.
DiscretePovm rank1_from_cd(const CdVectors &v, double tol = 1e-10);

/// Inverse of rank1_from_cd. Throws std::domain_error if an effect is not rank 1.
CdVectors cd_from_rank1(const DiscretePovm &p, double tol = kRankTol);

/// E_i -> lambda E_i + (1 - lambda) I / N.
DiscretePovm uniform_noise_mix(const DiscretePovm &p, double lambda);

/// Largest entrywise deviation of sum_i E_i from the identity.
double normalization_residual(const DiscretePovm &p);

}  // namespace naimark
