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

#include "naimark/trinary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace naimark::trinary {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

void check_unit(double v, const char *what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
    }
}

Matrix2 rotate(const Matrix2 &m, int k) {
    const Matrix2 &u = rotation(k);
    return u * m * u.adjoint();
}

Matrix2 unrotate(const Matrix2 &m, int k) {
    const Matrix2 &u = rotation(k);
    return u.adjoint() * m * u;
}

}  // namespace

int mod3(int k) {
    return ((k % 3) + 3) % 3;
}

const Matrix2 &rotation(int k) {
    static const std::array<Matrix2, 3> table = [] {
        std::array<Matrix2, 3> t;
        t[0] << 1.0, 0.0, 0.0, 1.0;
        t[1] << -0.5, -0.5 * kSqrt3, 0.5 * kSqrt3, -0.5;
        t[2] << -0.5, 0.5 * kSqrt3, -0.5 * kSqrt3, -0.5;
        return t;
    }();
    return table[static_cast<size_t>(mod3(k))];
}

DiscretePovm build_trinary(double lambda) {
    check_unit(lambda, "lambda");
    const double third = 1.0 / 3.0;
    return DiscretePovm::from_pauli({
        {2.0 * third, {0.0, 0.0, 2.0 * lambda / 3.0}},
        {2.0 * third, {-kSqrt3 * lambda / 3.0, 0.0, -lambda / 3.0}},
        {2.0 * third, {kSqrt3 * lambda / 3.0, 0.0, -lambda / 3.0}},
    });
}

DiscretePovm build_target(double eta, const Eigen::Vector2cd &psi) {
    check_unit(eta, "eta");
    if (std::abs(psi.norm() - 1.0) > kRankTol) {
        throw std::invalid_argument("psi must be a unit vector");
    }
    const Matrix2 b0 = eta * (2.0 / 3.0) * (psi * psi.adjoint()) +
                       (1.0 - eta) / 3.0 * Matrix2::Identity();
    DiscretePovm b;
    for (int k = 0; k < 3; ++k) {
        b.effects.push_back(rotate(b0, k));
    }
    return b;
}

NaimarkDilation CovariantDilation::as_dilation() const {
    std::vector<CdPair> rows;
    for (Eigen::Index r = 0; r < j.rows(); ++r) {
        rows.push_back({j(r, 0), j(r, 1)});
    }
    return NaimarkDilation(MultiplicityVector{{2, 2, 2}}, std::move(rows));
}

CovariantDilation build_covariant_dilation(double lambda) {
    check_unit(lambda, "lambda");
    if (lambda >= 1.0) {
        throw std::domain_error(
            "build_covariant_dilation: lambda = 1 gives a rank-1 trine with a 3-dimensional "
            "minimal dilation; use build_dilation");
    }
    CovariantDilation cd;
    cd.lambda = lambda;
    const double wp = std::sqrt((1.0 + lambda) / 3.0);
    const double wm = std::sqrt((1.0 - lambda) / 3.0);
    cd.j = Isometry::Zero(6, 2);
    for (int k = 0; k < 3; ++k) {
        // <+| U_k* and <-| U_k* are the columns of U_k read as rows.
        const Matrix2 &u = rotation(k);
        cd.j.row(2 * k) = wp * u.col(0).transpose();
        cd.j.row(2 * k + 1) = wm * u.col(1).transpose();
    }
    for (int k = 0; k < 3; ++k) {
        MatrixX p = MatrixX::Zero(6, 6);
        p(2 * k, 2 * k) = 1.0;
        p(2 * k + 1, 2 * k + 1) = 1.0;
        cd.projections[static_cast<size_t>(k)] = p;

        MatrixX v = MatrixX::Zero(6, 6);
        for (int l = 0; l < 3; ++l) {
            const int target = mod3(l + k);
            v(2 * target, 2 * l) = 1.0;
            v(2 * target + 1, 2 * l + 1) = 1.0;
        }
        cd.shifts[static_cast<size_t>(k)] = v;
    }
    return cd;
}

Matrix2 schur_weight(double lambda) {
    check_unit(lambda, "lambda");
    const double off = std::sqrt(std::max(0.0, 1.0 - lambda * lambda));
    Matrix2 m;
    m << 1.0 + lambda, off, off, 1.0 - lambda;
    return m / 3.0;
}

Matrix2 schur_inverse_weight(double lambda) {
    check_unit(lambda, "lambda");
    if (lambda >= 1.0) {
        throw std::domain_error("schur_inverse_weight: M^lambda has zero entries at lambda = 1");
    }
    const double off = 1.0 / std::sqrt(1.0 - lambda * lambda);
    Matrix2 m;
    m << 1.0 / (1.0 + lambda), off, off, 1.0 / (1.0 - lambda);
    return 3.0 * m;
}

Matrix2 schur(const Matrix2 &a, const Matrix2 &b) {
    return a.cwiseProduct(b);
}

Matrix2 schur_recover_A(const Matrix2 &n_kj, int k, double lambda) {
    return schur(unrotate(n_kj, k), schur_inverse_weight(lambda));
}

Matrix2 schur_compose_N(const Matrix2 &a, int k, double lambda) {
    return rotate(schur(schur_weight(lambda), a), k);
}

double trinary_threshold(double lambda) {
    check_unit(lambda, "lambda");
    return 0.5 * (1.0 + std::sqrt((1.0 - lambda) * (1.0 + lambda)));
}

std::optional<AnsatzSolution> trinary_ansatz_solve(double lambda, double eta, double tol) {
    check_unit(eta, "eta");
    const double f = trinary_threshold(lambda);
    if (eta > f + tol) {
        return std::nullopt;
    }
    const double d = std::max(0.0, (1.0 - eta / f) / 3.0);
    return AnsatzSolution{d, 2.0 / 3.0 - d};
}

JointPovm build_trinary_joint(double lambda, double eta, const Eigen::Vector2cd &psi) {
    if (std::abs(psi.norm() - 1.0) > kRankTol) {
        throw std::invalid_argument("build_trinary_joint: psi must be a unit vector");
    }
    bool minus = false;
    if (std::abs(std::abs(psi(1)) - 1.0) <= kRankTol) {
        minus = true;
    } else if (std::abs(std::abs(psi(0)) - 1.0) > kRankTol) {
        throw std::invalid_argument(
            "build_trinary_joint: the diagonal ansatz needs psi = |+> or |-> up to a phase");
    }
    const auto sol = trinary_ansatz_solve(lambda, eta);
    if (!sol) {
        throw std::domain_error("build_trinary_joint: eta exceeds f(lambda), ansatz infeasible");
    }
    // For psi = |+> the roles of the two diagonal entries swap.
    Matrix2 a = Matrix2::Zero();
    a(0, 0) = minus ? sol->d : sol->e;
    a(1, 1) = minus ? sol->e : sol->d;

    std::array<Matrix2, 3> column0;
    for (int k = 0; k < 3; ++k) {
        column0[static_cast<size_t>(k)] = schur_compose_N(unrotate(a, k), k, lambda);
    }
    JointPovm n;
    n.grid.assign(3, std::vector<Matrix2>(3));
    for (int k = 0; k < 3; ++k) {
        for (int j = 0; j < 3; ++j) {
            n.grid[static_cast<size_t>(k)][static_cast<size_t>(j)] =
                rotate(column0[static_cast<size_t>(mod3(k - j))], j);
        }
    }
    return n;
}

JointPovm symmetrize(const JointPovm &n) {
    if (n.rows() != 3 || n.cols() != 3) {
        throw std::invalid_argument("symmetrize: expects a 3 x 3 grid");
    }
    JointPovm out;
    out.grid.assign(3, std::vector<Matrix2>(3, Matrix2::Zero()));
    for (int k = 0; k < 3; ++k) {
        for (int j = 0; j < 3; ++j) {
            Matrix2 acc = Matrix2::Zero();
            for (int s = 0; s < 3; ++s) {
                acc += unrotate(n.grid[static_cast<size_t>(mod3(k + s))]
                                      [static_cast<size_t>(mod3(j + s))],
                                s);
            }
            out.grid[static_cast<size_t>(k)][static_cast<size_t>(j)] = acc / 3.0;
        }
    }
    return out;
}

double covariance_residual(const JointPovm &n) {
    if (n.rows() != 3 || n.cols() != 3) {
        throw std::invalid_argument("covariance_residual: expects a 3 x 3 grid");
    }
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
            for (int j = 0; j < 3; ++j) {
                const Matrix2 &lhs =
                    n.grid[static_cast<size_t>(mod3(k + l))][static_cast<size_t>(mod3(j + l))];
                const Matrix2 rhs = rotate(n.grid[static_cast<size_t>(k)][static_cast<size_t>(j)], l);
                worst = std::max(worst, max_abs(lhs - rhs));
            }
        }
    }
    return worst;
}

}  // namespace naimark::trinary
