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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "naimark/dilation.hpp"

namespace naimark {

/// Block-diagonal POVM in a dilation: blocks[i][j] is F_ij, an m_i x m_i
/// effect, and sum_j F_ij is the identity of block i.
struct BlockEffectFamily {
    std::vector<std::vector<MatrixX>> blocks;

    size_t num_blocks() const { return blocks.size(); }
    size_t num_outcomes() const { return blocks.empty() ? 0 : blocks.front().size(); }
};

/// Joint POVM grid; grid[i][j] = N_ij.
struct JointPovm {
    std::vector<std::vector<Matrix2>> grid;

    size_t rows() const { return grid.size(); }
    size_t cols() const { return grid.empty() ? 0 : grid.front().size(); }
};

/// Largest violation of the family invariants against the blocks of d:
/// shape mismatches throw std::invalid_argument, otherwise the result is
/// max(negative eigenvalue, eigenvalue above 1, |sum_j F_ij - I|_max).
double family_residual(const NaimarkDilation &d, const BlockEffectFamily &f);

/// N_ij = J* F_ij J. Throws std::invalid_argument on shape mismatch and
/// std::domain_error if the family violates its invariants by more than tol.
JointPovm assemble_joint(const NaimarkDilation &d, const BlockEffectFamily &f,
                         double tol = kRankTol);

/// Row-sum and column-sum POVMs of a grid. Both are validated (zero effects
/// allowed); throws PovmError if either fails.
std::pair<DiscretePovm, DiscretePovm> marginals(const JointPovm &j,
                                                const PovmOptions &opts = {kRankTol, true});

/// max over grid entries of the negative part of their spectrum.
double positivity_violation(const JointPovm &j);

/// Largest entrywise deviation of the row sums from e and column sums from b.
double marginal_residual(const JointPovm &j, const DiscretePovm &e, const DiscretePovm &b);

/// ||e + b|| + ||e - b||.
double busch_sum(const PauliVector &e, const PauliVector &b);

/// ||e + b|| + ||e - b|| <= 2 + tol. Necessary for compatibility of any pair
/// of effects and sufficient for unbiased ones.
bool busch_necessary(const PauliVector &e, const PauliVector &b, double tol = kAlgTol);

/// ||e||^2 + ||b||^2 - (e . b)^2.
double busch_equivalent_value(const PauliVector &e, const PauliVector &b);

/// ||e||^2 + ||b||^2 <= 1 + (e . b)^2 + tol. Equivalent to busch_necessary for
/// unbiased pairs only; biased incompatible pairs can satisfy it.
bool busch_equivalent_form(const PauliVector &e, const PauliVector &b, double tol = kAlgTol);

/// Block effects F (block of E) and G (block of 1 - E) realizing an unbiased
/// B in the dilation of E = (I + a sigma_3)/2, with
/// f = (1, b1/s, b2/s, b3), g = (1, b1/s, -b2/s, -b3), s = sqrt(1 - a^2).
/// Blocks follow the row order of build_dilation. Throws std::domain_error if
/// |a| >= 1, B is biased or the pair violates the criterion.
BlockEffectFamily busch_converse_construct(double a, const PauliVector &b, double tol = kAlgTol);

/// Joint POVM of the binary POVMs (E, I - E) and (B, I - B) for unbiased
/// compatible effects in any orientation. Commuting pairs get N_ij = E_i B_j;
/// otherwise E is rotated onto the sigma_3 axis and busch_converse_construct
/// is applied. Throws std::domain_error if the pair is biased or incompatible.
JointPovm busch_joint_unbiased(const PauliVector &e, const PauliVector &b, double tol = kAlgTol);

enum class Verdict { Feasible, Infeasible, Undecided };

const char *to_string(Verdict v);

struct FeasibilityOptions {
    double feas_tol = 1e-9;
    int max_iters = 50000;
    /// Allow the closed-form infeasibility certificates (Busch criterion for
    /// unbiased binary pairs, the rank-1 order argument for binary pairs and
    /// the range condition for the compression map). When disabled every
    /// verdict comes from the iteration itself.
    bool analytic_certificates = true;
    /// Residual samples are compared every `stall_window` iterations; the run
    /// stops as undecided once the residual no longer shrinks by the factor
    /// (1 - stall_rel).
    int stall_window = 250;
    double stall_rel = 1e-3;
    double tol = kRankTol;
};

struct InfeasibilityCertificate {
    std::string kind;
    /// Busch sum, or a negative expectation value <w|N|w>, or the affine gap.
    double value = 0.0;
    std::string detail;
};

struct FeasibilityResult {
    Verdict verdict = Verdict::Undecided;
    std::optional<BlockEffectFamily> family;
    std::optional<JointPovm> joint;
    std::optional<InfeasibilityCertificate> certificate;
    /// Constraint residual of the last iterate (feasible: marginal residual).
    double residual = 0.0;
    int iterations = 0;
};

/// Searches for a block family in the dilation of E whose compressions have
/// column marginals B, by Dykstra alternating projections between the affine
/// set of marginal constraints and the product of per-block operator
/// intervals [0, I]. Throws PovmError on invalid input POVMs.
FeasibilityResult feasibility_solve(const DiscretePovm &e, const DiscretePovm &b,
                                    const FeasibilityOptions &opts = {});

/// Order-theoretic obstruction for binary pairs: if E_i and B_j are rank 1
/// with different ranges then N_ij = 0 and the opposite corner
/// I - E_i - B_j must be positive. Returns a certificate when it is not.
std::optional<InfeasibilityCertificate> rank1_order_certificate(const DiscretePovm &e,
                                                                const DiscretePovm &b,
                                                                double tol = kRankTol);

}  // namespace naimark
