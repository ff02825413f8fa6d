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

#include "naimark/dilation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace naimark {

NaimarkDilation::NaimarkDilation(MultiplicityVector m, std::vector<CdPair> rows)
    : m_(std::move(m)), rows_(std::move(rows)) {
    offsets_.assign(m_.size() + 1, 0);
    for (size_t i = 0; i < m_.size(); ++i) {
        if (m_[i] < 0 || m_[i] > 2) {
            throw std::invalid_argument("multiplicities must lie in {0, 1, 2}");
        }
        offsets_[i + 1] = offsets_[i] + static_cast<size_t>(m_[i]);
    }
    if (offsets_.back() != rows_.size()) {
        throw std::invalid_argument("number of rows does not match |m|_1");
    }
}

Isometry NaimarkDilation::isometry() const {
    Isometry j(static_cast<Eigen::Index>(rows_.size()), 2);
    for (size_t k = 0; k < rows_.size(); ++k) {
        j(static_cast<Eigen::Index>(k), 0) = rows_[k].c;
        j(static_cast<Eigen::Index>(k), 1) = rows_[k].d;
    }
    return j;
}

Isometry NaimarkDilation::block_rows(size_t i) const {
    const auto n = static_cast<Eigen::Index>(m_[i]);
    Isometry j(n, 2);
    for (Eigen::Index k = 0; k < n; ++k) {
        const CdPair &row = rows_[offsets_[i] + static_cast<size_t>(k)];
        j(k, 0) = row.c;
        j(k, 1) = row.d;
    }
    return j;
}

MatrixX NaimarkDilation::projection(size_t i) const {
    const auto n = static_cast<Eigen::Index>(rows_.size());
    MatrixX p = MatrixX::Zero(n, n);
    for (size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
        p(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0;
    }
    return p;
}

Matrix2 NaimarkDilation::marginal(size_t i) const {
    Matrix2 e = Matrix2::Zero();
    for (size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
        e += gram(rows_[k]);
    }
    return e;
}

NaimarkDilation build_dilation(const DiscretePovm &p, const PovmOptions &opts) {
    const MultiplicityVector m = validate_povm(p, opts);
    std::vector<CdPair> rows;
    rows.reserve(static_cast<size_t>(m.l1()));
    for (size_t i = 0; i < p.size(); ++i) {
        if (m[i] == 0) {
            continue;
        }
        const SpectralSplit s = spectral_split(p[i], opts.tol);
        rows.push_back(s.plus);
        if (m[i] == 2) {
            rows.push_back(s.minus);
        }
    }
    return NaimarkDilation(m, std::move(rows));
}

NaimarkDilation dilation_from_cd(const MultiplicityVector &m, const CdVectors &v, double tol) {
    if (v.c.size() != v.d.size()) {
        throw std::invalid_argument("dilation_from_cd: c and d differ in length");
    }
    double cc = 0.0;
    double dd = 0.0;
    Complex cd{};
    std::vector<CdPair> rows;
    for (size_t k = 0; k < v.c.size(); ++k) {
        CdPair pair{v.c[k], v.d[k]};
        cc += std::norm(pair.c);
        dd += std::norm(pair.d);
        cd += std::conj(pair.c) * pair.d;
        rows.push_back(pair.is_zero() ? pair : canonicalize_cd(pair));
    }
    if (std::abs(cc - 1.0) > tol || std::abs(dd - 1.0) > tol || std::abs(cd) > tol) {
        throw std::domain_error("dilation_from_cd: c and d are not orthonormal");
    }
    return NaimarkDilation(m, std::move(rows));
}

DiscretePovm realized_povm(const NaimarkDilation &d) {
    DiscretePovm p;
    for (size_t i = 0; i < d.num_blocks(); ++i) {
        p.effects.push_back(d.marginal(i));
    }
    return p;
}

std::vector<RankDiscrepancy> rank_discrepancies(const NaimarkDilation &d, double tol) {
    std::vector<RankDiscrepancy> out;
    for (size_t i = 0; i < d.num_blocks(); ++i) {
        const int actual = effect_rank(d.marginal(i), tol);
        if (actual != d.block_dim(i)) {
            out.push_back({i, d.block_dim(i), actual});
        }
    }
    return out;
}

double isometry_residual(const NaimarkDilation &d) {
    const Isometry j = d.isometry();
    const Matrix2 jj = j.adjoint() * j;
    return max_abs(jj - Matrix2::Identity());
}

double verify_dilation(const NaimarkDilation &d, const DiscretePovm &p) {
    if (d.num_blocks() != p.size()) {
        throw std::invalid_argument("verify_dilation: dilation has " +
                                    std::to_string(d.num_blocks()) + " blocks but POVM has " +
                                    std::to_string(p.size()) + " outcomes");
    }
    double residual = isometry_residual(d);
    for (size_t i = 0; i < p.size(); ++i) {
        residual = std::max(residual, max_abs(d.marginal(i) - p[i]));
    }
    return residual;
}

bool is_minimal(const NaimarkDilation &d, double tol) {
    const auto n = static_cast<Eigen::Index>(d.dimension());
    if (n == 0) {
        return true;
    }
    const Isometry j = d.isometry();
    MatrixX span = MatrixX::Zero(n, static_cast<Eigen::Index>(2 * d.num_blocks()));
    for (size_t i = 0; i < d.num_blocks(); ++i) {
        for (size_t k = d.offset(i); k < d.offset(i + 1); ++k) {
            const auto r = static_cast<Eigen::Index>(k);
            span(r, static_cast<Eigen::Index>(2 * i)) = j(r, 0);
            span(r, static_cast<Eigen::Index>(2 * i + 1)) = j(r, 1);
        }
    }
    Eigen::JacobiSVD<MatrixX> svd(span);
    const auto &sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) > tol) {
            ++rank;
        }
    }
    return rank == n;
}

Matrix2 compress_block(const NaimarkDilation &d, size_t i, const MatrixX &block) {
    if (i >= d.num_blocks()) {
        throw std::out_of_range("compress_block: block index out of range");
    }
    const auto n = static_cast<Eigen::Index>(d.block_dim(i));
    if (block.rows() != n || block.cols() != n) {
        throw std::invalid_argument("compress_block: block " + std::to_string(i) +
                                    " must be " + std::to_string(n) + "x" +
                                    std::to_string(n));
    }
    if (n == 0) {
        return Matrix2::Zero();
    }
    const Isometry j = d.block_rows(i);
    return j.adjoint() * block * j;
}

Matrix2 compress(const NaimarkDilation &d, const std::vector<MatrixX> &blocks) {
    if (blocks.size() != d.num_blocks()) {
        throw std::invalid_argument("compress: expected one block per outcome");
    }
    Matrix2 out = Matrix2::Zero();
    for (size_t i = 0; i < blocks.size(); ++i) {
        out += compress_block(d, i, blocks[i]);
    }
    return out;
}

std::array<Matrix2, 4> pauli_conjugation_table(const NaimarkDilation &d, size_t i) {
    if (i >= d.num_blocks() || d.block_dim(i) != 2) {
        throw std::domain_error("pauli_conjugation_table: block must have multiplicity 2");
    }
    const CdPair &a = d.rows()[d.offset(i)];
    const CdPair &b = d.rows()[d.offset(i) + 1];
    const Complex i1{0.0, 1.0};
    auto conj = [](Complex z) { return std::conj(z); };

    std::array<Matrix2, 4> t;
    t[0] = gram(a) + gram(b);
    t[1] << b.c * conj(a.c) + a.c * conj(b.c), b.d * conj(a.c) + a.d * conj(b.c),
        b.c * conj(a.d) + a.c * conj(b.d), b.d * conj(a.d) + a.d * conj(b.d);
    t[2] << -b.c * conj(a.c) + a.c * conj(b.c), -b.d * conj(a.c) + a.d * conj(b.c),
        -b.c * conj(a.d) + a.c * conj(b.d), -b.d * conj(a.d) + a.d * conj(b.d);
    t[2] *= i1;
    t[3] = gram(a) - gram(b);
    return t;
}

}  // namespace naimark
