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
#include <vector>

#include <Eigen/Dense>

#include "naimark/povm.hpp"

namespace naimark {

using MatrixX = Eigen::MatrixXcd;
using Isometry = Eigen::Matrix<Complex, Eigen::Dynamic, 2>;

/// Minimal Naimark dilation (C^{|m|_1}, P, J) of a qubit POVM.
///
/// Rows of J are stored in outcome order; a rank-2 outcome contributes its
/// (+) row followed by its (-) row. Block i spans rows
/// [offset(i), offset(i + 1)) and P_i is the projection onto those rows.
class NaimarkDilation {
  public:
    NaimarkDilation(MultiplicityVector m, std::vector<CdPair> rows);

    const MultiplicityVector &multiplicity() const { return m_; }
    const std::vector<CdPair> &rows() const { return rows_; }
    size_t num_blocks() const { return m_.size(); }
    /// Dimension of the dilation space, |m|_1.
    size_t dimension() const { return rows_.size(); }
    size_t offset(size_t i) const { return offsets_[i]; }
    int block_dim(size_t i) const { return m_[i]; }

    /// The full isometry J (dimension x 2).
    Isometry isometry() const;
    /// Rows of block i only (m_i x 2).
    Isometry block_rows(size_t i) const;
    /// P_i as a dimension x dimension matrix.
    MatrixX projection(size_t i) const;
    /// J* P_i J.
    Matrix2 marginal(size_t i) const;

  private:
    MultiplicityVector m_;
    std::vector<CdPair> rows_;
    std::vector<size_t> offsets_;
};

/// Builds the minimal dilation of a valid POVM. Throws PovmError otherwise.
NaimarkDilation build_dilation(const DiscretePovm &p, const PovmOptions &opts = {});

/// Dilation from arbitrary orthonormal columns (c, d) and a block layout m.
/// Nonzero rows are canonicalized; m may overstate the actual ranks, see
/// rank_discrepancies.
NaimarkDilation dilation_from_cd(const MultiplicityVector &m, const CdVectors &v,
                                 double tol = 1e-10);

/// The POVM (J* P_i J)_i realized by a dilation.
DiscretePovm realized_povm(const NaimarkDilation &d);

struct RankDiscrepancy {
    size_t outcome;
    int declared;
    int actual;
};

/// Blocks whose declared multiplicity exceeds the rank of J* P_i J.
std::vector<RankDiscrepancy> rank_discrepancies(const NaimarkDilation &d, double tol = kRankTol);

/// max(max_i |J* P_i J - E_i|_max, |J* J - I|_max). Throws std::invalid_argument
/// if the number of outcomes differs.
double verify_dilation(const NaimarkDilation &d, const DiscretePovm &p);

/// Column orthonormality residual |J* J - I|_max.
double isometry_residual(const NaimarkDilation &d);

/// True iff {P_i c, P_i d}_i spans the dilation space.
bool is_minimal(const NaimarkDilation &d, double tol = kRankTol);

/// sum_i J* F_i J for block-diagonal F given as one m_i x m_i block per outcome.
/// Throws std::invalid_argument on shape mismatch.
Matrix2 compress(const NaimarkDilation &d, const std::vector<MatrixX> &blocks);

/// J* F J for a single block operator F acting on block i.
Matrix2 compress_block(const NaimarkDilation &d, size_t i, const MatrixX &block);

/// The four matrices J* Y_i* sigma_mu Y_i J for a rank-2 block, evaluated
/// entrywise from its two rows. A block effect with Pauli vector f
/// compresses to sum_mu f^mu table[mu] / 2. Throws std::domain_error if m_i != 2.
std::array<Matrix2, 4> pauli_conjugation_table(const NaimarkDilation &d, size_t i);

}  // namespace naimark
