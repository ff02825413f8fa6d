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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "naimark/qubit_algebra.hpp"

namespace naimark::continuous {

/// Bivariate polynomial in (x, y) with complex coefficients, total degree at
/// most kMaxDegree. Degree 4 is reachable as a product of two quadratics.
class Poly {
public:
    static constexpr int kMaxDegree = 4;

    Poly() = default;
    static Poly constant(Complex c);
    static Poly x();
    static Poly y();
    /// c x^a y^b.
    static Poly monomial(int a, int b, Complex c = 1.0);

    Complex coeff(int a, int b) const;
    void set_coeff(int a, int b, Complex c);

    /// Highest total degree with a coefficient of modulus above tol.
    /// Returns -1 for the zero polynomial.
    int degree(double tol = 0.0) const;
    bool depends_on_x(double tol = 0.0) const;
    bool depends_on_y(double tol = 0.0) const;

    Complex operator()(double x, double y) const;

    Poly operator+(const Poly &o) const;
    Poly operator-(const Poly &o) const;
    Poly operator-() const;
    /// Throws std::domain_error if the product exceeds kMaxDegree.
    Poly operator*(const Poly &o) const;
    Poly operator*(Complex s) const;
    Poly conj() const;

    /// Gaussian expectation over x against e^{-x^2} dx / sqrt(pi), leaving a
    /// polynomial in y.
    Poly integrate_x() const;
    /// Same over y, leaving a polynomial in x.
    Poly integrate_y() const;
    /// Full expectation against e^{-x^2-y^2} dx dy / pi.
    Complex expectation() const;

    /// Largest coefficient modulus.
    double max_abs() const;

private:
    std::array<std::array<Complex, kMaxDegree + 1>, kMaxDegree + 1> c_{};
};

inline Poly operator*(Complex s, const Poly &p) { return p * s; }

/// Gaussian moment <t^n> against e^{-t^2} dt / sqrt(pi): 0 for odd n,
/// (n - 1)!! / 2^{n/2} for even n.
double gaussian_moment(int n);

/// 2 x 2 matrix of polynomial entries.
struct PolyMatrix {
    Poly a00, a01, a10, a11;

    Matrix2 at(double x, double y) const;
    PolyMatrix operator+(const PolyMatrix &o) const;
    /// Entrywise expectation over all variables.
    Matrix2 expectation() const;
    /// a00 a11 - a01 a10.
    Poly determinant() const;
    double max_abs() const;
};

enum class Variable { X, Y };

/// Operator density against the standard Gaussian measure in the variables it
/// carries: e^{-x^2-y^2} dx dy / pi, or e^{-t^2} dt / sqrt(pi) if univariate.
struct GaussianPolyOvm {
    std::vector<std::string> labels;
    std::vector<PolyMatrix> densities;
    bool has_x = true;
    bool has_y = true;

    size_t size() const { return labels.size(); }
};

/// Label name used for singleton (unlabelled) OVMs.
inline constexpr const char *kAllLabels = "*";

/// Pointwise Hermiticity of every density, coefficientwise within tol.
bool is_pointwise_hermitian(const GaussianPolyOvm &o, double tol = kAlgTol);

/// |sum over labels of the full expectation - I|_max.
double normalization_residual(const GaussianPolyOvm &o);

/// Integrates out one variable. Throws std::invalid_argument if the OVM does
/// not carry it.
GaussianPolyOvm marginalize(const GaussianPolyOvm &o, Variable over);

/// Sums the label densities into a singleton OVM.
GaussianPolyOvm marginalize_labels(const GaussianPolyOvm &o);

/// Per-label effects: each density integrated over all of its variables.
std::vector<Matrix2> label_effects(const GaussianPolyOvm &o);

/// Operator density against d theta / 2 pi on [0, 2 pi):
/// [[diag0, alpha + beta e^{-i theta}], [conj, diag1]].
struct TrigEntry {
    double diag0 = 0.0;
    double diag1 = 0.0;
    Complex alpha{};
    Complex beta{};

    Matrix2 at(double theta) const;
    /// Integral over d theta / 2 pi.
    Matrix2 average() const;
};

struct TrigOvm {
    std::vector<std::string> labels;
    std::vector<TrigEntry> densities;

    size_t size() const { return labels.size(); }
};

/// Sum of the label densities.
TrigEntry trig_label_sum(const TrigOvm &o);
std::vector<Matrix2> label_effects(const TrigOvm &o);
double normalization_residual(const TrigOvm &o);

struct NoiseParams {
    double eps = 0.0;
    double eps0 = 0.0;
    double eps_theta = 0.0;
    double theta = 0.0;
};

/// Noisy projected quadrature Q_theta: density
/// [[1, (1-e) sqrt2 t e^{-i theta}], [(1-e) sqrt2 t e^{i theta}, (1-e) 2 t^2 + e]]
/// in the variable t = `var`.
GaussianPolyOvm quadrature_prono(double theta, double eps_theta, Variable var = Variable::X);

/// diag(1 - eps/2, eps/2) and diag(eps/2, 1 - eps/2).
std::array<Matrix2, 2> number_prono(double eps);

/// Noisy projected canonical phase [[1, (1-eps) e^{-i theta}], [., 1]].
TrigOvm phase_prono(double eps);

/// Joint OVM G of (number, Q_0, Q_theta) with labels {"0", "1"} in (x, y).
GaussianPolyOvm triple_joint_G(const NoiseParams &p);

/// Marginal of G over the number label, in (x, y).
GaussianPolyOvm joint_G1(const NoiseParams &p);
/// Marginal of G over x: number and Q_theta.
GaussianPolyOvm joint_G2(const NoiseParams &p);
/// Marginal of G over y: number and Q_0.
GaussianPolyOvm joint_G3(const NoiseParams &p);

/// Thrown when a determinant has total degree above 2.
class UnsupportedDegree : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Closed-form infimum of a real polynomial of degree at most 2 over R^2.
struct QuadraticInfimum {
    /// -infinity when unbounded below.
    double value = 0.0;
    /// Minimizer if attained; otherwise a point with value below -1.
    std::array<double, 2> point{0.0, 0.0};
    bool attained = true;
};

/// Throws UnsupportedDegree if the real part of p has degree above 2 and
/// std::domain_error if p has an imaginary part above tol.
QuadraticInfimum quadratic_infimum(const Poly &p, double tol = kAlgTol);

struct PositivityReport {
    bool positive = true;
    /// Set when not positive.
    std::optional<size_t> label;
    /// "diag0", "diag1" or "det".
    std::string quantity;
    /// (x, y) for Gaussian OVMs, (theta, 0) for trigonometric ones.
    std::array<double, 2> witness{0.0, 0.0};
    /// Value of `quantity` at the witness.
    double value = 0.0;
    /// Smallest determinant infimum over labels (may be -infinity).
    double min_determinant = 0.0;
};

/// Exact positivity: for every label both diagonal entries and the
/// determinant are nonnegative on all of R^2, within tol. Witness points are
/// first searched among (0,0), (1,0), (0,1), (-1,0), (0,-1) before the
/// closed-form minimizer. Throws UnsupportedDegree for determinants of degree
/// above 2.
PositivityReport ovm_is_positive(const GaussianPolyOvm &o, double tol = kAlgTol);
PositivityReport ovm_is_positive(const TrigOvm &o, double tol = kAlgTol);

/// eps / (2 - eps) + eps0 + eps_theta - 2 >= -tol.
bool threshold_triple(const NoiseParams &p, double tol = kAlgTol);
/// eps0 + eps_theta - 1 >= -tol.
bool threshold_pair_quadratures(double eps0, double eps_theta, double tol = kAlgTol);
/// 2 / (2 - eps) + eps_axis - 2 >= -tol.
bool threshold_pair_number_quadrature(double eps, double eps_axis, double tol = kAlgTol);

/// (7 - sqrt 17) / 4, 2 - sqrt 2, 1/2, 4/7 and 1 - 1/sqrt 2.
inline constexpr double kTripleEqualNoise = 0.71922359359558485;
inline constexpr double kNumberQuadratureEqualNoise = 0.58578643762690485;
inline constexpr double kQuadraturePairEqualNoise = 0.5;
inline constexpr double kImprovedTripleEqualNoise = 4.0 / 7.0;
inline constexpr double kPhaseNumberMinNoise = 0.29289321881345248;

struct GprimeCoefficients {
    double f, g, h, i;
};

/// g = eps/2 - 2f, h = 1 - eps - f, i = 3 eps/2 - 1 + 2f.
GprimeCoefficients gprime_coefficients(double eps, double f);

/// G' at equal noise eps with free parameter f; no positivity check.
GaussianPolyOvm gprime_family(double eps, double f, double theta);

/// [max(1/2 - 3eps/4, 0, 1 - 3eps/2), min(eps/4, 1 - eps/2, 1 - eps)] for
/// eps > 1/2; nullopt when empty. Crossed endpoints within tol collapse to
/// the upper one.
std::optional<std::pair<double, double>> feasible_f_interval(double eps, double tol = kAlgTol);

/// G' with f checked against feasible_f_interval (within tol). Throws
/// std::domain_error when the interval is empty or f lies outside it.
GaussianPolyOvm improved_joint_Gprime(double eps, double f, double theta, double tol = kAlgTol);

/// G'_2 (number and Q_theta, labels {"0", "1"}, variable y) and G'_1 (Q_0 and
/// Q_theta, singleton, (x, y)) at equal noise eps >= 1/2. Throws
/// std::domain_error below 1/2.
std::pair<GaussianPolyOvm, GaussianPolyOvm> improved_pair_joints(double eps, double theta);

/// (1 - eps) / (sqrt(eps/2) sqrt(1 - eps/2)); +infinity at eps = 0.
double phase_f(double eps);

/// Joint POVM of number and phase with labels {"0", "1"}. Throws
/// std::domain_error if phase_f(eps) > 2 + tol and std::invalid_argument if
/// |c| or |d| exceeds 1 + tol or |c + d - f(eps)| > tol.
TrigOvm phase_number_joint(double eps, Complex c, Complex d, double tol = kAlgTol);

/// (eps, phase_f(eps)) for each grid point.
std::vector<std::pair<double, double>> phase_curve(const std::vector<double> &eps_grid);

}  // namespace naimark::continuous
