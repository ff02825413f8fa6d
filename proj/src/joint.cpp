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

#include "naimark/joint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace naimark {

namespace {

std::pair<double, double> hermitian_spectrum(const MatrixX &m) {
    if (m.rows() == 1) {
        const double v = m(0, 0).real();
        return {v, v};
    }
    Matrix2 h = m;
    const auto ev = eigenvalues(0.5 * (h + h.adjoint()).eval());
    return {ev[0], ev[1]};
}

}  // namespace

double family_residual(const NaimarkDilation &d, const BlockEffectFamily &f) {
    if (f.num_blocks() != d.num_blocks()) {
        throw std::invalid_argument("block family has " + std::to_string(f.num_blocks()) +
                                    " blocks, dilation has " + std::to_string(d.num_blocks()));
    }
    const size_t outcomes = f.num_outcomes();
    double residual = 0.0;
    for (size_t i = 0; i < f.num_blocks(); ++i) {
        if (f.blocks[i].size() != outcomes) {
            throw std::invalid_argument("block family rows have different lengths");
        }
        const auto n = static_cast<Eigen::Index>(d.block_dim(i));
        MatrixX sum = MatrixX::Zero(n, n);
        for (const auto &fij : f.blocks[i]) {
            if (fij.rows() != n || fij.cols() != n) {
                throw std::invalid_argument("block " + std::to_string(i) + " effect has wrong shape");
            }
            sum += fij;
            if (n == 0) {
                continue;
            }
            const MatrixX herm = fij - fij.adjoint();
            residual = std::max(residual, herm.cwiseAbs().maxCoeff());
            const auto [lo, hi] = hermitian_spectrum(fij);
            residual = std::max({residual, -lo, hi - 1.0});
        }
        if (n > 0) {
            residual = std::max(residual,
                                (sum - MatrixX::Identity(n, n)).cwiseAbs().maxCoeff());
        }
    }
    return residual;
}

JointPovm assemble_joint(const NaimarkDilation &d, const BlockEffectFamily &f, double tol) {
    const double violation = family_residual(d, f);
    if (violation > tol) {
        throw std::domain_error("assemble_joint: block family violates its invariants by " +
                                std::to_string(violation));
    }
    JointPovm j;
    j.grid.resize(f.num_blocks());
    for (size_t i = 0; i < f.num_blocks(); ++i) {
        for (const auto &fij : f.blocks[i]) {
            j.grid[i].push_back(compress_block(d, i, fij));
        }
    }
    return j;
}

std::pair<DiscretePovm, DiscretePovm> marginals(const JointPovm &j, const PovmOptions &opts) {
    DiscretePovm rows;
    DiscretePovm cols;
    cols.effects.assign(j.cols(), Matrix2::Zero());
    for (const auto &row : j.grid) {
        if (row.size() != j.cols()) {
            throw std::invalid_argument("marginals: ragged joint grid");
        }
        Matrix2 sum = Matrix2::Zero();
        for (size_t c = 0; c < row.size(); ++c) {
            sum += row[c];
            cols.effects[c] += row[c];
        }
        rows.effects.push_back(sum);
    }
    validate_povm(rows, opts);
    validate_povm(cols, opts);
    return {rows, cols};
}

double positivity_violation(const JointPovm &j) {
    double worst = 0.0;
    for (const auto &row : j.grid) {
        for (const auto &n : row) {
            worst = std::max(worst, -eigenvalues(n)[0]);
        }
    }
    return worst;
}

double marginal_residual(const JointPovm &j, const DiscretePovm &e, const DiscretePovm &b) {
    if (j.rows() != e.size() || j.cols() != b.size()) {
        throw std::invalid_argument("marginal_residual: grid shape does not match the POVMs");
    }
    double residual = 0.0;
    for (size_t r = 0; r < j.rows(); ++r) {
        Matrix2 sum = Matrix2::Zero();
        for (const auto &n : j.grid[r]) {
            sum += n;
        }
        residual = std::max(residual, max_abs(sum - e[r]));
    }
    for (size_t c = 0; c < j.cols(); ++c) {
        Matrix2 sum = Matrix2::Zero();
        for (size_t r = 0; r < j.rows(); ++r) {
            sum += j.grid[r][c];
        }
        residual = std::max(residual, max_abs(sum - b[c]));
    }
    return residual;
}

double busch_sum(const PauliVector &e, const PauliVector &b) {
    return (e + b).norm() + (e - b).norm();
}

bool busch_necessary(const PauliVector &e, const PauliVector &b, double tol) {
    return busch_sum(e, b) <= 2.0 + tol;
}

double busch_equivalent_value(const PauliVector &e, const PauliVector &b) {
    const double eb = e.dot(b);
    return e.dot(e) + b.dot(b) - eb * eb;
}

bool busch_equivalent_form(const PauliVector &e, const PauliVector &b, double tol) {
    return busch_equivalent_value(e, b) <= 1.0 + tol;
}

BlockEffectFamily busch_converse_construct(double a, const PauliVector &b, double tol) {
    if (!(std::abs(a) < 1.0)) {
        throw std::domain_error("busch_converse_construct: requires |a| < 1");
    }
    if (std::abs(b.e0 - 1.0) > tol) {
        throw std::domain_error("busch_converse_construct: B must be unbiased");
    }
    const PauliVector e{1.0, {0.0, 0.0, a}};
    if (!busch_equivalent_form(e, b, tol)) {
        throw std::domain_error("busch_converse_construct: pair violates the Busch criterion");
    }
    const double s = std::sqrt(1.0 - a * a);
    PauliVector f{1.0, {b.e[0] / s, b.e[1] / s, b.e[2]}};
    PauliVector g{1.0, {b.e[0] / s, -b.e[1] / s, -b.e[2]}};
    if (a < 0.0) {
        // For a < 0 the two rows of each block come out in swapped order;
        // conjugating by sigma_1 moves the blocks into that basis.
        f.e[1] = -f.e[1];
        f.e[2] = -f.e[2];
        g.e[1] = -g.e[1];
        g.e[2] = -g.e[2];
    }
    const Matrix2 fm = pauli_compose(f);
    const Matrix2 gm = pauli_compose(g);
    BlockEffectFamily fam;
    fam.blocks = {{fm, Matrix2::Identity() - fm}, {gm, Matrix2::Identity() - gm}};
    return fam;
}

namespace {

/// Unitary V with V* (n . sigma) V = sigma_3 for a unit vector n.
Matrix2 rotation_onto_z(const std::array<double, 3> &n) {
    const double theta = std::acos(std::clamp(n[2], -1.0, 1.0));
    const double phi = std::atan2(n[1], n[0]);
    const Complex ep = std::polar(1.0, phi);
    Matrix2 v;
    v << std::cos(theta / 2.0), -std::conj(ep) * std::sin(theta / 2.0),
        ep * std::sin(theta / 2.0), std::cos(theta / 2.0);
    return v;
}

bool commutes(const Matrix2 &x, const Matrix2 &y, double tol) {
    return max_abs(x * y - y * x) <= tol;
}

}  // namespace

JointPovm busch_joint_unbiased(const PauliVector &e, const PauliVector &b, double tol) {
    if (std::abs(e.e0 - 1.0) > tol || std::abs(b.e0 - 1.0) > tol) {
        throw std::domain_error("busch_joint_unbiased: both effects must be unbiased");
    }
    if (!busch_necessary(e, b, tol)) {
        throw std::domain_error("busch_joint_unbiased: pair is incompatible");
    }
    const Matrix2 em = pauli_compose(e);
    const Matrix2 bm = pauli_compose(b);
    const Matrix2 id = Matrix2::Identity();
    JointPovm j;
    if (commutes(em, bm, tol)) {
        const std::array<Matrix2, 2> es{em, id - em};
        const std::array<Matrix2, 2> bs{bm, id - bm};
        j.grid.assign(2, std::vector<Matrix2>(2));
        for (size_t r = 0; r < 2; ++r) {
            for (size_t c = 0; c < 2; ++c) {
                const Matrix2 prod = es[r] * bs[c];
                j.grid[r][c] = 0.5 * (prod + prod.adjoint());
            }
        }
        return j;
    }
    const double a = e.norm();
    if (a >= 1.0) {
        throw std::domain_error("busch_joint_unbiased: projective E admits only commuting B");
    }
    Matrix2 v = Matrix2::Identity();
    if (a > 0.0) {
        v = rotation_onto_z({e.e[0] / a, e.e[1] / a, e.e[2] / a});
    }
    const Matrix2 b_rot = v.adjoint() * bm * v;
    const PauliVector b_rot_pauli = pauli_decompose(0.5 * (b_rot + b_rot.adjoint()), tol);
    const PauliVector e_axis{1.0, {0.0, 0.0, a}};
    const DiscretePovm e_povm = DiscretePovm::from_pauli({e_axis, PauliVector{1.0, {0.0, 0.0, -a}}});
    const NaimarkDilation dil = build_dilation(e_povm);
    const JointPovm rotated = assemble_joint(dil, busch_converse_construct(a, b_rot_pauli, tol));
    j.grid.assign(2, std::vector<Matrix2>(2));
    for (size_t r = 0; r < 2; ++r) {
        for (size_t c = 0; c < 2; ++c) {
            j.grid[r][c] = v * rotated.grid[r][c] * v.adjoint();
        }
    }
    return j;
}

const char *to_string(Verdict v) {
    switch (v) {
    case Verdict::Feasible:
        return "feasible";
    case Verdict::Infeasible:
        return "infeasible";
    case Verdict::Undecided:
        return "undecided";
    }
    return "unknown";
}

std::optional<InfeasibilityCertificate> rank1_order_certificate(const DiscretePovm &e,
                                                                const DiscretePovm &b,
                                                                double tol) {
    if (e.size() != 2 || b.size() != 2) {
        return std::nullopt;
    }
    auto range_vector = [tol](const Matrix2 &m) -> std::optional<Eigen::Vector2cd> {
        if (effect_rank(m, tol) != 1) {
            return std::nullopt;
        }
        const CdPair p = spectral_split(m, tol).plus;
        Eigen::Vector2cd v(std::conj(p.c), std::conj(p.d));
        return v.normalized();
    };
    const Matrix2 id = Matrix2::Identity();
    for (size_t i = 0; i < 2; ++i) {
        const auto u = range_vector(e[i]);
        if (!u) {
            continue;
        }
        for (size_t j = 0; j < 2; ++j) {
            const auto w = range_vector(b[j]);
            if (!w || std::abs(u->dot(*w)) >= 1.0 - tol) {
                continue;
            }
            // N_ij <= E_i and N_ij <= B_j with distinct rank-1 ranges forces
            // N_ij = 0, which pins the opposite corner to I - E_i - B_j.
            const Matrix2 corner = id - e[i] - b[j];
            Eigen::Vector2cd witness;
            double value = 0.0;
            if (corner(0, 0).real() <= corner(1, 1).real()) {
                witness = Eigen::Vector2cd(1.0, 0.0);
                value = corner(0, 0).real();
            } else {
                witness = Eigen::Vector2cd(0.0, 1.0);
                value = corner(1, 1).real();
            }
            if (value >= -tol) {
                Eigen::SelfAdjointEigenSolver<Matrix2> es(0.5 * (corner + corner.adjoint()));
                witness = es.eigenvectors().col(0);
                value = es.eigenvalues()(0);
            }
            if (value < -tol) {
                InfeasibilityCertificate cert;
                cert.kind = "rank1-order";
                cert.value = value;
                cert.detail = "N_" + std::to_string(i) + std::to_string(j) +
                              " = 0 forces N_" + std::to_string(1 - i) +
                              std::to_string(1 - j) + " = I - E_" + std::to_string(i) +
                              " - B_" + std::to_string(j) + ", which is not positive";
                return cert;
            }
        }
    }
    return std::nullopt;
}

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

/// Real coordinates of a block family. A 1x1 block is its scalar; a 2x2 block
/// uses the Frobenius-orthonormal basis sigma_mu / sqrt(2), so that Euclidean
/// distance on coordinates equals the Frobenius distance of operators.
struct Layout {
    std::vector<int> dims;
    std::vector<Eigen::Index> offsets;
    size_t outcomes = 0;
    Eigen::Index size = 0;

    Layout(const NaimarkDilation &d, size_t m) : outcomes(m) {
        for (size_t i = 0; i < d.num_blocks(); ++i) {
            dims.push_back(d.block_dim(i));
            offsets.push_back(size);
            size += static_cast<Eigen::Index>(dims.back() * dims.back()) *
                    static_cast<Eigen::Index>(m);
        }
    }

    Eigen::Index width(size_t i) const { return dims[i] * dims[i]; }
    Eigen::Index index(size_t i, size_t j) const {
        return offsets[i] + static_cast<Eigen::Index>(j) * width(i);
    }
};

/// Coordinates of a Hermitian 2x2 matrix in the basis sigma_mu / sqrt(2).
Eigen::Vector4d herm_coords(const Matrix2 &h) {
    Eigen::Vector4d out;
    for (int mu = 0; mu < 4; ++mu) {
        out(mu) = (sigma(mu) * h).trace().real() / kSqrt2;
    }
    return out;
}

MatrixX block_from_coords(const Eigen::VectorXd &x, const Layout &lay, size_t i, size_t j) {
    const Eigen::Index at = lay.index(i, j);
    if (lay.dims[i] == 1) {
        MatrixX m(1, 1);
        m(0, 0) = x(at);
        return m;
    }
    Matrix2 m = Matrix2::Zero();
    for (int mu = 0; mu < 4; ++mu) {
        m += (x(at + mu) / kSqrt2) * sigma(mu);
    }
    return m;
}

void project_interval(Eigen::VectorXd &x, const Layout &lay) {
    for (size_t i = 0; i < lay.dims.size(); ++i) {
        for (size_t j = 0; j < lay.outcomes; ++j) {
            const Eigen::Index at = lay.index(i, j);
            if (lay.dims[i] == 1) {
                x(at) = std::clamp(x(at), 0.0, 1.0);
                continue;
            }
            if (lay.dims[i] != 2) {
                continue;
            }
            const double f0 = x(at) * kSqrt2;
            const double f1 = x(at + 1) * kSqrt2;
            const double f2 = x(at + 2) * kSqrt2;
            const double f3 = x(at + 3) * kSqrt2;
            const double n = std::sqrt(f1 * f1 + f2 * f2 + f3 * f3);
            const double hi = std::clamp(0.5 * (f0 + n), 0.0, 1.0);
            const double lo = std::clamp(0.5 * (f0 - n), 0.0, 1.0);
            x(at) = (hi + lo) / kSqrt2;
            const double scale = n > 0.0 ? (hi - lo) / n : 0.0;
            x(at + 1) = scale * f1 / kSqrt2;
            x(at + 2) = scale * f2 / kSqrt2;
            x(at + 3) = scale * f3 / kSqrt2;
        }
    }
}

struct AffineSystem {
    Eigen::MatrixXd a;
    Eigen::VectorXd rhs;
};

AffineSystem marginal_constraints(const NaimarkDilation &d, const DiscretePovm &b,
                                  const Layout &lay) {
    Eigen::Index rows = 4 * static_cast<Eigen::Index>(b.size());
    for (size_t i = 0; i < lay.dims.size(); ++i) {
        rows += lay.width(i);
    }
    AffineSystem sys{Eigen::MatrixXd::Zero(rows, lay.size), Eigen::VectorXd::Zero(rows)};

    // sum_j F_ij = identity of block i.
    Eigen::Index r = 0;
    for (size_t i = 0; i < lay.dims.size(); ++i) {
        for (Eigen::Index c = 0; c < lay.width(i); ++c, ++r) {
            for (size_t j = 0; j < lay.outcomes; ++j) {
                sys.a(r, lay.index(i, j) + c) = 1.0;
            }
            if (lay.dims[i] == 1) {
                sys.rhs(r) = 1.0;
            } else if (c == 0) {
                sys.rhs(r) = kSqrt2;
            }
        }
    }

    // sum_i J* F_ij J = B_j, in sigma_mu / sqrt(2) coordinates.
    std::vector<std::vector<Eigen::Vector4d>> images(lay.dims.size());
    for (size_t i = 0; i < lay.dims.size(); ++i) {
        if (lay.dims[i] == 1) {
            images[i].push_back(herm_coords(d.marginal(i)));
        } else if (lay.dims[i] == 2) {
            const auto table = pauli_conjugation_table(d, i);
            for (int mu = 0; mu < 4; ++mu) {
                images[i].push_back(herm_coords(table[static_cast<size_t>(mu)] / kSqrt2));
            }
        }
    }
    for (size_t j = 0; j < b.size(); ++j) {
        const Eigen::Vector4d target = herm_coords(b[j]);
        for (int o = 0; o < 4; ++o, ++r) {
            for (size_t i = 0; i < lay.dims.size(); ++i) {
                for (size_t c = 0; c < images[i].size(); ++c) {
                    sys.a(r, lay.index(i, j) + static_cast<Eigen::Index>(c)) = images[i][c](o);
                }
            }
            sys.rhs(r) = target(o);
        }
    }
    return sys;
}

BlockEffectFamily family_from_coords(const Eigen::VectorXd &x, const Layout &lay) {
    BlockEffectFamily f;
    f.blocks.resize(lay.dims.size());
    for (size_t i = 0; i < lay.dims.size(); ++i) {
        for (size_t j = 0; j < lay.outcomes; ++j) {
            if (lay.dims[i] == 0) {
                f.blocks[i].push_back(MatrixX(0, 0));
            } else {
                f.blocks[i].push_back(block_from_coords(x, lay, i, j));
            }
        }
    }
    return f;
}

bool is_unbiased_binary(const std::vector<PauliVector> &p, double tol) {
    return p.size() == 2 && std::abs(p[0].e0 - 1.0) <= tol && std::abs(p[1].e0 - 1.0) <= tol;
}

}  // namespace

FeasibilityResult feasibility_solve(const DiscretePovm &e, const DiscretePovm &b,
                                    const FeasibilityOptions &opts) {
    const PovmOptions vopts{opts.tol, true};
    validate_povm(e, vopts);
    validate_povm(b, vopts);
    if (opts.max_iters < 1) {
        throw std::invalid_argument("feasibility_solve: max_iters must be positive");
    }

    FeasibilityResult result;
    if (opts.analytic_certificates) {
        const auto ep = e.pauli();
        const auto bp = b.pauli();
        if (is_unbiased_binary(ep, opts.tol) && is_unbiased_binary(bp, opts.tol) &&
            !busch_necessary(ep[0], bp[0], opts.feas_tol)) {
            result.verdict = Verdict::Infeasible;
            result.certificate = InfeasibilityCertificate{
                "busch", busch_sum(ep[0], bp[0]),
                "||e+b|| + ||e-b|| exceeds 2 for an unbiased pair"};
            return result;
        }
        if (auto cert = rank1_order_certificate(e, b, opts.tol)) {
            result.verdict = Verdict::Infeasible;
            result.certificate = std::move(cert);
            return result;
        }
    }

    const NaimarkDilation dil = build_dilation(e, vopts);
    const Layout lay(dil, b.size());
    const AffineSystem sys = marginal_constraints(dil, b, lay);

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sys.a);
    cod.setThreshold(1e-12);
    const Eigen::MatrixXd pinv = cod.pseudoInverse();
    const Eigen::VectorXd base = pinv * sys.rhs;
    const Eigen::MatrixXd null_proj =
        Eigen::MatrixXd::Identity(lay.size, lay.size) - pinv * sys.a;

    const double gap = (sys.a * base - sys.rhs).cwiseAbs().maxCoeff();
    if (gap > opts.feas_tol) {
        result.residual = gap;
        if (opts.analytic_certificates) {
            result.verdict = Verdict::Infeasible;
            result.certificate = InfeasibilityCertificate{
                "range", gap, "some B_j lies outside the range of the block compressions"};
        }
        return result;
    }

    auto project_affine = [&](const Eigen::VectorXd &v) -> Eigen::VectorXd {
        return null_proj * v + base;
    };
    auto constraint_residual = [&](const Eigen::VectorXd &v) {
        return (sys.a * v - sys.rhs).cwiseAbs().maxCoeff();
    };

    // Start from F_ij = tr(B_j)/2 on every block, which already resolves each
    // block identity.
    Eigen::VectorXd x = Eigen::VectorXd::Zero(lay.size);
    for (size_t i = 0; i < lay.dims.size(); ++i) {
        for (size_t j = 0; j < lay.outcomes; ++j) {
            const double w = 0.5 * b[j].trace().real();
            x(lay.index(i, j)) = lay.dims[i] == 1 ? w : w * kSqrt2;
        }
    }
    Eigen::VectorXd p = Eigen::VectorXd::Zero(lay.size);
    Eigen::VectorXd q = Eigen::VectorXd::Zero(lay.size);

    // Coordinates differ from matrix entries by at most a factor sqrt(2).
    const double coord_tol = opts.feas_tol / 2.0;
    double window_start = constraint_residual(x);
    double r = window_start;
    int k = 0;
    for (; k < opts.max_iters; ++k) {
        const Eigen::VectorXd y = project_affine(x + p);
        p = x + p - y;
        Eigen::VectorXd z = y + q;
        project_interval(z, lay);
        q = y + q - z;
        x = std::move(z);

        r = constraint_residual(x);
        if (r <= coord_tol) {
            ++k;
            break;
        }
        if ((k + 1) % opts.stall_window == 0) {
            if (r >= (1.0 - opts.stall_rel) * window_start) {
                ++k;
                break;
            }
            window_start = r;
        }
    }
    result.iterations = k;
    result.residual = r;
    if (r > coord_tol) {
        result.verdict = Verdict::Undecided;
        return result;
    }

    BlockEffectFamily fam = family_from_coords(x, lay);
    JointPovm joint = assemble_joint(dil, fam, std::max(opts.feas_tol, opts.tol));
    result.residual = std::max(marginal_residual(joint, e, b), family_residual(dil, fam));
    if (result.residual > opts.feas_tol) {
        result.verdict = Verdict::Undecided;
        return result;
    }
    result.verdict = Verdict::Feasible;
    result.family = std::move(fam);
    result.joint = std::move(joint);
    return result;
}

}  // namespace naimark
