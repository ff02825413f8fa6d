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

#include "naimark/povm.hpp"

#include <cmath>
#include <numeric>

namespace naimark {

DiscretePovm DiscretePovm::from_pauli(const std::vector<PauliVector> &vs) {
    DiscretePovm p;
    p.effects.reserve(vs.size());
    for (const auto &v : vs) {
        p.effects.push_back(pauli_compose(v));
    }
    return p;
}

std::vector<PauliVector> DiscretePovm::pauli() const {
    std::vector<PauliVector> out;
    out.reserve(effects.size());
    for (const auto &e : effects) {
        out.push_back(pauli_decompose(e, kRankTol));
    }
    return out;
}

int MultiplicityVector::l1() const {
    return std::accumulate(m.begin(), m.end(), 0);
}

double normalization_residual(const DiscretePovm &p) {
    Matrix2 sum = Matrix2::Zero();
    for (const auto &e : p.effects) {
        sum += e;
    }
    return max_abs(sum - Matrix2::Identity());
}

MultiplicityVector validate_povm(const DiscretePovm &p, const PovmOptions &opts) {
    if (p.effects.empty()) {
        throw PovmError("POVM has no effects");
    }
    MultiplicityVector mv;
    mv.m.reserve(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        if (!is_effect(p[i], opts.tol)) {
            throw PovmError("effect " + std::to_string(i) + " is not an effect");
        }
        const int rank = effect_rank(pauli_decompose(p[i], opts.tol), opts.tol);
        if (rank == 0 && !opts.allow_zero) {
            throw PovmError("effect " + std::to_string(i) + " is zero");
        }
        mv.m.push_back(rank);
    }
    if (normalization_residual(p) > opts.tol) {
        throw PovmError("effects do not sum to the identity");
    }
    return mv;
}

DiscretePovm rank1_from_cd(const CdVectors &v, double tol) {
    if (v.c.size() != v.d.size() || v.c.empty()) {
        throw std::domain_error("rank1_from_cd: c and d must be non-empty and of equal length");
    }
    double cc = 0.0;
    double dd = 0.0;
    Complex cd{};
    for (size_t k = 0; k < v.c.size(); ++k) {
        const CdPair pair{v.c[k], v.d[k]};
        if (pair.is_zero() || !is_canonical(pair)) {
            throw std::domain_error("rank1_from_cd: pair " + std::to_string(k) +
                                    " is not in canonical form");
        }
        cc += std::norm(v.c[k]);
        dd += std::norm(v.d[k]);
        cd += std::conj(v.c[k]) * v.d[k];
    }
    if (std::abs(cc - 1.0) > tol || std::abs(dd - 1.0) > tol || std::abs(cd) > tol) {
        throw std::domain_error("rank1_from_cd: c and d are not orthonormal");
    }
    DiscretePovm p;
    for (size_t k = 0; k < v.c.size(); ++k) {
        p.effects.push_back(gram({v.c[k], v.d[k]}));
    }
    return p;
}

CdVectors cd_from_rank1(const DiscretePovm &p, double tol) {
    CdVectors out;
    for (size_t i = 0; i < p.size(); ++i) {
        if (effect_rank(p[i], tol) != 1) {
            throw std::domain_error("cd_from_rank1: effect " + std::to_string(i) +
                                    " is not of rank 1");
        }
        const SpectralSplit s = spectral_split(p[i], tol);
        out.c.push_back(s.plus.c);
        out.d.push_back(s.plus.d);
    }
    return out;
}

DiscretePovm uniform_noise_mix(const DiscretePovm &p, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("uniform_noise_mix: lambda must lie in [0, 1]");
    }
    const double n = static_cast<double>(p.size());
    DiscretePovm out;
    out.effects.reserve(p.size());
    for (const auto &e : p.effects) {
        out.effects.push_back(lambda * e + ((1.0 - lambda) / n) * Matrix2::Identity());
    }
    return out;
}

}  // namespace naimark
