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

#include "naimark/qubit_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace naimark {

double PauliVector::norm() const {
    return std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
}

double PauliVector::dot(const PauliVector &other) const {
    return e[0] * other.e[0] + e[1] * other.e[1] + e[2] * other.e[2];
}

PauliVector operator+(const PauliVector &a, const PauliVector &b) {
    return {a.e0 + b.e0, {a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2]}};
}

PauliVector operator-(const PauliVector &a, const PauliVector &b) {
    return {a.e0 - b.e0, {a.e[0] - b.e[0], a.e[1] - b.e[1], a.e[2] - b.e[2]}};
}

PauliVector operator*(double s, const PauliVector &a) {
    return {s * a.e0, {s * a.e[0], s * a.e[1], s * a.e[2]}};
}

const Matrix2 &sigma(int mu) {
    static const std::array<Matrix2, 4> table = [] {
        const Complex i{0.0, 1.0};
        std::array<Matrix2, 4> t;
        t[0] << 1.0, 0.0, 0.0, 1.0;
        t[1] << 0.0, 1.0, 1.0, 0.0;
        t[2] << 0.0, -i, i, 0.0;
        t[3] << 1.0, 0.0, 0.0, -1.0;
        return t;
    }();
    if (mu < 0 || mu > 3) {
        throw std::out_of_range("Pauli index must be in 0..3");
    }
    return table[static_cast<size_t>(mu)];
}

Matrix2 gram(const CdPair &p) {
    Matrix2 m;
    m << std::norm(p.c), std::conj(p.c) * p.d, p.c * std::conj(p.d), std::norm(p.d);
    return m;
}

double max_abs(const Matrix2 &m) {
    return m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix2 &m, double tol) {
    return std::abs(m(0, 0).imag()) <= tol && std::abs(m(1, 1).imag()) <= tol &&
           std::abs(m(1, 0) - std::conj(m(0, 1))) <= tol;
}

PauliVector pauli_decompose(const Matrix2 &m, double tol) {
    if (!is_hermitian(m, tol)) {
        throw std::domain_error("pauli_decompose: matrix is not Hermitian");
    }
    PauliVector v;
    v.e0 = (m(0, 0) + m(1, 1)).real();
    v.e[0] = (m(0, 1) + m(1, 0)).real();
    v.e[1] = (Complex{0.0, 1.0} * (m(0, 1) - m(1, 0))).real();
    v.e[2] = (m(0, 0) - m(1, 1)).real();
    return v;
}

Matrix2 pauli_compose(const PauliVector &v) {
    Matrix2 m;
    m << 0.5 * (v.e0 + v.e[2]), Complex{0.5 * v.e[0], -0.5 * v.e[1]},
        Complex{0.5 * v.e[0], 0.5 * v.e[1]}, 0.5 * (v.e0 - v.e[2]);
    return m;
}

bool is_effect(const PauliVector &v, double tol) {
    return v.norm() <= std::min(v.e0, 2.0 - v.e0) + tol;
}

bool is_effect(const Matrix2 &m, double tol) {
    if (!is_hermitian(m, tol)) {
        return false;
    }
    return is_effect(pauli_decompose(m, tol), tol);
}

std::array<double, 2> eigenvalues(const Matrix2 &m) {
    const PauliVector v = pauli_decompose(m, std::max(kAlgTol, 1e-9 * max_abs(m)));
    const double n = v.norm();
    return {0.5 * (v.e0 - n), 0.5 * (v.e0 + n)};
}

int effect_rank(const PauliVector &v, double tol) {
    const double n = v.norm();
    const double hi = 0.5 * (v.e0 + n);
    const double lo = 0.5 * (v.e0 - n);
    return (hi > tol ? 1 : 0) + (lo > tol ? 1 : 0);
}

int effect_rank(const Matrix2 &m, double tol) {
    return effect_rank(pauli_decompose(m, kAlgTol), tol);
}

CdPair canonicalize_cd(const CdPair &p) {
    if (p.c != Complex{}) {
        const double r = std::abs(p.c);
        const Complex phase = std::conj(p.c) / r;
        return {Complex{r, 0.0}, p.d * phase};
    }
    if (p.d != Complex{}) {
        return {Complex{}, Complex{std::abs(p.d), 0.0}};
    }
    throw std::domain_error("canonicalize_cd: (c, d) = (0, 0) has no canonical form");
}

bool is_canonical(const CdPair &p) {
    if (p.c.imag() == 0.0 && p.c.real() > 0.0) {
        return true;
    }
    return p.c == Complex{} && p.d.imag() == 0.0 && p.d.real() > 0.0;
}

namespace {

CdPair canonical_or_zero(const CdPair &p) {
    return p.is_zero() ? p : canonicalize_cd(p);
}

}  // namespace

SpectralSplit spectral_split(const Matrix2 &m, double tol) {
    if (!is_effect(m, tol)) {
        throw std::domain_error("spectral_split: input is not an effect");
    }
    const PauliVector v = pauli_decompose(m, tol);
    const double e1 = v.e[0];
    const double e2 = v.e[1];
    const double e3 = v.e[2];
    const double r = std::hypot(e1, e2);

    CdPair plus;
    CdPair minus;
    if (r == 0.0) {
        // Axis-aligned: sgn(e3) with sgn(0) = +1 picks which basis vector
        // carries the larger eigenvalue.
        const double s = e3 >= 0.0 ? 1.0 : -1.0;
        const double a3 = std::abs(e3);
        const double wp = std::sqrt(std::max(0.0, v.e0 + a3) / 2.0);
        const double wm = std::sqrt(std::max(0.0, v.e0 - a3) / 2.0);
        plus = {0.5 * (1.0 + s) * wp, 0.5 * (1.0 - s) * wp};
        minus = {0.5 * (1.0 - s) * wm, 0.5 * (1.0 + s) * wm};
    } else {
        const double n = v.norm();
        // n + e3 and n - e3 multiply to r^2; take the larger one directly.
        double np = 0.0;
        double nm = 0.0;
        if (e3 >= 0.0) {
            np = n + e3;
            nm = r * (r / np);
        } else {
            nm = n - e3;
            np = r * (r / nm);
        }
        const double lp = std::max(0.0, v.e0 + n);
        const double lm = std::max(0.0, v.e0 - n);
        const Complex u = Complex{e1, -e2} / r;
        plus = {std::sqrt(lp * np / (4.0 * n)), u * std::sqrt(lp * nm / (4.0 * n))};
        minus = {std::sqrt(lm * nm / (4.0 * n)), -u * std::sqrt(lm * np / (4.0 * n))};
    }
    plus = canonical_or_zero(plus);
    minus = canonical_or_zero(minus);
    return {gram(plus), gram(minus), plus, minus};
}

}  // namespace naimark
