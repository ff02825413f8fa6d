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

#include "naimark/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace naimark::continuous {

namespace {

constexpr int kN = Poly::kMaxDegree + 1;
constexpr double kSqrt2 = std::numbers::sqrt2;

void check_unit(double v, const char *what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
    }
}

void check_index(int a, int b) {
    if (a < 0 || b < 0 || a + b > Poly::kMaxDegree) {
        throw std::out_of_range("Poly: monomial exceeds the maximal degree");
    }
}

Complex phase(double theta) {
    return std::polar(1.0, theta);
}

/// sqrt2 x + sqrt2 e^{-i theta} y, with weights on each variable.
Poly linear_form(double wx, double wy, double theta) {
    return Poly::x() * (wx * kSqrt2) + Poly::y() * (wy * kSqrt2 * std::conj(phase(theta)));
}

/// |linear_form|^2 = wx^2 2x^2 + wy^2 2y^2 + wx wy 4 cos(theta) xy.
Poly linear_form_norm(double wx, double wy, double theta) {
    Poly p;
    p.set_coeff(2, 0, 2.0 * wx * wx);
    p.set_coeff(0, 2, 2.0 * wy * wy);
    p.set_coeff(1, 1, 4.0 * wx * wy * std::cos(theta));
    return p;
}

PolyMatrix hermitian_density(const Poly &d0, const Poly &off, const Poly &d1) {
    return PolyMatrix{d0, off, off.conj(), d1};
}

std::array<double, 2> probe_witness(const Poly &p, const QuadraticInfimum &inf, double tol) {
    static constexpr std::array<std::array<double, 2>, 5> kProbes{
        {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}}};
    for (const auto &pt : kProbes) {
        if (p(pt[0], pt[1]).real() < -tol) {
            return pt;
        }
    }
    return inf.point;
}

}  // namespace

Poly Poly::constant(Complex c) {
    return monomial(0, 0, c);
}

Poly Poly::x() {
    return monomial(1, 0);
}

Poly Poly::y() {
    return monomial(0, 1);
}

Poly Poly::monomial(int a, int b, Complex c) {
    Poly p;
    p.set_coeff(a, b, c);
    return p;
}

Complex Poly::coeff(int a, int b) const {
    check_index(a, b);
    return c_[static_cast<size_t>(a)][static_cast<size_t>(b)];
}

void Poly::set_coeff(int a, int b, Complex c) {
    check_index(a, b);
    c_[static_cast<size_t>(a)][static_cast<size_t>(b)] = c;
}

int Poly::degree(double tol) const {
    int deg = -1;
    for (int a = 0; a < kN; ++a) {
        for (int b = 0; a + b < kN; ++b) {
            if (std::abs(coeff(a, b)) > tol) {
                deg = std::max(deg, a + b);
            }
        }
    }
    return deg;
}

bool Poly::depends_on_x(double tol) const {
    for (int a = 1; a < kN; ++a) {
        for (int b = 0; a + b < kN; ++b) {
            if (std::abs(coeff(a, b)) > tol) {
                return true;
            }
        }
    }
    return false;
}

bool Poly::depends_on_y(double tol) const {
    for (int a = 0; a < kN; ++a) {
        for (int b = 1; a + b < kN; ++b) {
            if (std::abs(coeff(a, b)) > tol) {
                return true;
            }
        }
    }
    return false;
}

Complex Poly::operator()(double x, double y) const {
    Complex acc{};
    double xa = 1.0;
    for (int a = 0; a < kN; ++a) {
        double yb = 1.0;
        for (int b = 0; a + b < kN; ++b) {
            acc += coeff(a, b) * (xa * yb);
            yb *= y;
        }
        xa *= x;
    }
    return acc;
}

Poly Poly::operator+(const Poly &o) const {
    Poly r;
    for (int a = 0; a < kN; ++a) {
        for (int b = 0; a + b < kN; ++b) {
            r.set_coeff(a, b, coeff(a, b) + o.coeff(a, b));
        }
    }
    return r;
}

Poly Poly::operator-(const Poly &o) const {
    return *this + (-o);
}

Poly Poly::operator-() const {
    return *this * Complex(-1.0);
}

Poly Poly::operator*(const Poly &o) const {
    Poly r;
    for (int a = 0; a < kN; ++a) {
        for (int b = 0; a + b < kN; ++b) {
            const Complex u = coeff(a, b);
            if (u == Complex{}) {
                continue;
            }
            for (int c = 0; c < kN; ++c) {
                for (int d = 0; c + d < kN; ++d) {
                    const Complex v = o.coeff(c, d);
                    if (v == Complex{}) {
                        continue;
                    }
                    if (a + b + c + d > kMaxDegree) {
                        throw std::domain_error("Poly: product exceeds degree 4");
                    }
                    r.set_coeff(a + c, b + d, r.coeff(a + c, b + d) + u * v);
                }
            }
        }
    }
    return r;
}

Poly Poly::operator*(Complex s) const {
    Poly r;
    for (int a = 0; a < kN; ++a) {
        for (int b = 0; a + b < kN; ++b) {
            r.set_coeff(a, b, coeff(a, b) * s);
        }
    }
    return r;
}

Poly Poly::conj() const {
    Poly r;
    for (int a = 0; a < kN; ++a) {
        for (int b = 0; a + b < kN; ++b) {
            r.set_coeff(a, b, std::conj(coeff(a, b)));
        }
    }
    return r;
}

Poly Poly::integrate_x() const {
    Poly r;
    for (int a = 0; a < kN; ++a) {
        for (int b = 0; a + b < kN; ++b) {
            r.set_coeff(0, b, r.coeff(0, b) + coeff(a, b) * gaussian_moment(a));
        }
    }
    return r;
}

Poly Poly::integrate_y() const {
    Poly r;
    for (int a = 0; a < kN; ++a) {
        for (int b = 0; a + b < kN; ++b) {
            r.set_coeff(a, 0, r.coeff(a, 0) + coeff(a, b) * gaussian_moment(b));
        }
    }
    return r;
}

Complex Poly::expectation() const {
    return integrate_x().integrate_y().coeff(0, 0);
}

double Poly::max_abs() const {
    double m = 0.0;
    for (int a = 0; a < kN; ++a) {
        for (int b = 0; a + b < kN; ++b) {
            m = std::max(m, std::abs(coeff(a, b)));
        }
    }
    return m;
}

double gaussian_moment(int n) {
    if (n < 0) {
        throw std::invalid_argument("gaussian_moment: negative order");
    }
    if (n % 2 == 1) {
        return 0.0;
    }
    double m = 1.0;
    for (int k = n - 1; k > 0; k -= 2) {
        m *= 0.5 * k;
    }
    return m;
}

Matrix2 PolyMatrix::at(double x, double y) const {
    Matrix2 m;
    m << a00(x, y), a01(x, y), a10(x, y), a11(x, y);
    return m;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix &o) const {
    return {a00 + o.a00, a01 + o.a01, a10 + o.a10, a11 + o.a11};
}

Matrix2 PolyMatrix::expectation() const {
    Matrix2 m;
    m << a00.expectation(), a01.expectation(), a10.expectation(), a11.expectation();
    return m;
}

Poly PolyMatrix::determinant() const {
    return a00 * a11 - a01 * a10;
}

double PolyMatrix::max_abs() const {
    return std::max({a00.max_abs(), a01.max_abs(), a10.max_abs(), a11.max_abs()});
}

bool is_pointwise_hermitian(const GaussianPolyOvm &o, double tol) {
    for (const PolyMatrix &m : o.densities) {
        if ((m.a10 - m.a01.conj()).max_abs() > tol) {
            return false;
        }
        if ((m.a00 - m.a00.conj()).max_abs() > tol || (m.a11 - m.a11.conj()).max_abs() > tol) {
            return false;
        }
    }
    return true;
}

double normalization_residual(const GaussianPolyOvm &o) {
    Matrix2 total = Matrix2::Zero();
    for (const PolyMatrix &m : o.densities) {
        total += m.expectation();
    }
    return max_abs(total - Matrix2::Identity());
}

GaussianPolyOvm marginalize(const GaussianPolyOvm &o, Variable over) {
    const bool on_x = over == Variable::X;
    if ((on_x && !o.has_x) || (!on_x && !o.has_y)) {
        throw std::invalid_argument("marginalize: the OVM does not carry that variable");
    }
    GaussianPolyOvm r = o;
    auto integrate = [on_x](const Poly &p) { return on_x ? p.integrate_x() : p.integrate_y(); };
    for (PolyMatrix &m : r.densities) {
        m = {integrate(m.a00), integrate(m.a01), integrate(m.a10), integrate(m.a11)};
    }
    (on_x ? r.has_x : r.has_y) = false;
    return r;
}

GaussianPolyOvm marginalize_labels(const GaussianPolyOvm &o) {
    GaussianPolyOvm r;
    r.labels = {kAllLabels};
    r.has_x = o.has_x;
    r.has_y = o.has_y;
    PolyMatrix sum;
    for (const PolyMatrix &m : o.densities) {
        sum = sum + m;
    }
    r.densities = {sum};
    return r;
}

std::vector<Matrix2> label_effects(const GaussianPolyOvm &o) {
    std::vector<Matrix2> out;
    for (const PolyMatrix &m : o.densities) {
        out.push_back(m.expectation());
    }
    return out;
}

Matrix2 TrigEntry::at(double theta) const {
    const Complex off = alpha + beta * std::conj(phase(theta));
    Matrix2 m;
    m << diag0, off, std::conj(off), diag1;
    return m;
}

Matrix2 TrigEntry::average() const {
    Matrix2 m;
    m << diag0, alpha, std::conj(alpha), diag1;
    return m;
}

TrigEntry trig_label_sum(const TrigOvm &o) {
    TrigEntry s;
    for (const TrigEntry &e : o.densities) {
        s.diag0 += e.diag0;
        s.diag1 += e.diag1;
        s.alpha += e.alpha;
        s.beta += e.beta;
    }
    return s;
}

std::vector<Matrix2> label_effects(const TrigOvm &o) {
    std::vector<Matrix2> out;
    for (const TrigEntry &e : o.densities) {
        out.push_back(e.average());
    }
    return out;
}

double normalization_residual(const TrigOvm &o) {
    return max_abs(trig_label_sum(o).average() - Matrix2::Identity());
}

GaussianPolyOvm quadrature_prono(double theta, double eps_theta, Variable var) {
    check_unit(eps_theta, "eps_theta");
    const double s = 1.0 - eps_theta;
    const bool on_x = var == Variable::X;
    const Poly t = on_x ? Poly::x() : Poly::y();
    GaussianPolyOvm o;
    o.labels = {kAllLabels};
    o.has_x = on_x;
    o.has_y = !on_x;
    o.densities = {hermitian_density(Poly::constant(1.0),
                                     t * (s * kSqrt2 * std::conj(phase(theta))),
                                     t * t * (2.0 * s) + Poly::constant(eps_theta))};
    return o;
}

std::array<Matrix2, 2> number_prono(double eps) {
    check_unit(eps, "eps");
    std::array<Matrix2, 2> n;
    n[0] << 1.0 - eps / 2.0, 0.0, 0.0, eps / 2.0;
    n[1] << eps / 2.0, 0.0, 0.0, 1.0 - eps / 2.0;
    return n;
}

TrigOvm phase_prono(double eps) {
    check_unit(eps, "eps");
    return TrigOvm{{kAllLabels}, {TrigEntry{1.0, 1.0, 0.0, 1.0 - eps}}};
}

GaussianPolyOvm triple_joint_G(const NoiseParams &p) {
    check_unit(p.eps, "eps");
    check_unit(p.eps0, "eps0");
    check_unit(p.eps_theta, "eps_theta");
    const double s0 = 1.0 - p.eps0;
    const double st = 1.0 - p.eps_theta;
    const Poly l = linear_form(s0, st, p.theta);
    Poly r = Poly::constant(p.eps0 + p.eps_theta - 2.0);
    r.set_coeff(2, 0, 2.0 * s0);
    r.set_coeff(0, 2, 2.0 * st);
    r.set_coeff(1, 1, 4.0 * s0 * st * std::cos(p.theta));

    GaussianPolyOvm o;
    o.labels = {"0", "1"};
    const double w0 = 1.0 - p.eps / 2.0;
    const double w1 = p.eps / 2.0;
    o.densities = {
        hermitian_density(Poly::constant(w0), l * w0, Poly::constant(w1) + r * w0),
        hermitian_density(Poly::constant(w1), l * w1, Poly::constant(w0) + r * w1),
    };
    return o;
}

GaussianPolyOvm joint_G1(const NoiseParams &p) {
    return marginalize_labels(triple_joint_G(p));
}

GaussianPolyOvm joint_G2(const NoiseParams &p) {
    return marginalize(triple_joint_G(p), Variable::X);
}

GaussianPolyOvm joint_G3(const NoiseParams &p) {
    return marginalize(triple_joint_G(p), Variable::Y);
}

QuadraticInfimum quadratic_infimum(const Poly &p, double tol) {
    const double scale = 1.0 + p.max_abs();
    if ((p - p.conj()).max_abs() > 2.0 * tol * scale) {
        throw std::domain_error("quadratic_infimum: polynomial is not real");
    }
    const int deg = p.degree(tol * scale);
    if (deg > 2) {
        throw UnsupportedDegree("quadratic_infimum: degree " + std::to_string(deg) +
                                " polynomial; only degree <= 2 is supported");
    }
    auto value = [&p](const Eigen::Vector2d &v) { return p(v(0), v(1)).real(); };

    const Eigen::Vector2d g(p.coeff(1, 0).real(), p.coeff(0, 1).real());
    Eigen::Matrix2d h;
    h << 2.0 * p.coeff(2, 0).real(), p.coeff(1, 1).real(), p.coeff(1, 1).real(),
        2.0 * p.coeff(0, 2).real();
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h);
    const double cut = tol * scale;

    auto unbounded = [&](const Eigen::Vector2d &dir) {
        QuadraticInfimum r;
        r.value = -std::numeric_limits<double>::infinity();
        r.attained = false;
        double t = 1.0;
        for (int k = 0; k < 200 && value(t * dir) >= -1.0; ++k) {
            t *= 2.0;
        }
        const Eigen::Vector2d pt = t * dir;
        r.point = {pt(0), pt(1)};
        return r;
    };

    Eigen::Vector2d z = Eigen::Vector2d::Zero();
    for (int k = 0; k < 2; ++k) {
        const double lam = es.eigenvalues()(k);
        const Eigen::Vector2d v = es.eigenvectors().col(k);
        const double gv = g.dot(v);
        if (lam < -cut) {
            return unbounded(gv > 0.0 ? Eigen::Vector2d(-v) : v);
        }
        if (lam <= cut) {
            if (std::abs(gv) > cut) {
                return unbounded(gv > 0.0 ? Eigen::Vector2d(-v) : v);
            }
            continue;
        }
        z -= (gv / lam) * v;
    }
    QuadraticInfimum r;
    r.value = value(z);
    r.point = {z(0), z(1)};
    return r;
}

PositivityReport ovm_is_positive(const GaussianPolyOvm &o, double tol) {
    PositivityReport rep;
    rep.min_determinant = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < o.densities.size(); ++i) {
        const PolyMatrix &m = o.densities[i];
        const std::array<std::pair<const char *, Poly>, 3> checks{{
            {"diag0", m.a00},
            {"diag1", m.a11},
            {"det", m.determinant()},
        }};
        for (const auto &[name, poly] : checks) {
            const QuadraticInfimum inf = quadratic_infimum(poly, tol);
            if (std::string(name) == "det") {
                rep.min_determinant = std::min(rep.min_determinant, inf.value);
            }
            if (rep.positive && inf.value < -tol) {
                rep.positive = false;
                rep.label = i;
                rep.quantity = name;
                rep.witness = probe_witness(poly, inf, tol);
                rep.value = poly(rep.witness[0], rep.witness[1]).real();
            }
        }
    }
    return rep;
}

PositivityReport ovm_is_positive(const TrigOvm &o, double tol) {
    PositivityReport rep;
    rep.min_determinant = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < o.densities.size(); ++i) {
        const TrigEntry &e = o.densities[i];
        // |alpha + beta e^{-i theta}| peaks where both terms share a phase.
        double theta = 0.0;
        if (std::abs(e.alpha) > 0.0 && std::abs(e.beta) > 0.0) {
            theta = std::arg(e.beta) - std::arg(e.alpha);
            theta = std::fmod(theta + 2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
        }
        const double off = std::abs(e.alpha) + std::abs(e.beta);
        const double det = e.diag0 * e.diag1 - off * off;
        rep.min_determinant = std::min(rep.min_determinant, det);
        const std::array<std::pair<const char *, double>, 3> checks{{
            {"diag0", e.diag0},
            {"diag1", e.diag1},
            {"det", det},
        }};
        for (const auto &[name, v] : checks) {
            if (rep.positive && v < -tol) {
                rep.positive = false;
                rep.label = i;
                rep.quantity = name;
                rep.witness = {theta, 0.0};
                rep.value = v;
            }
        }
    }
    return rep;
}

bool threshold_triple(const NoiseParams &p, double tol) {
    check_unit(p.eps, "eps");
    check_unit(p.eps0, "eps0");
    check_unit(p.eps_theta, "eps_theta");
    return p.eps / (2.0 - p.eps) + p.eps0 + p.eps_theta - 2.0 >= -tol;
}

bool threshold_pair_quadratures(double eps0, double eps_theta, double tol) {
    check_unit(eps0, "eps0");
    check_unit(eps_theta, "eps_theta");
    return eps0 + eps_theta - 1.0 >= -tol;
}

bool threshold_pair_number_quadrature(double eps, double eps_axis, double tol) {
    check_unit(eps, "eps");
    check_unit(eps_axis, "eps_axis");
    return 2.0 / (2.0 - eps) + eps_axis - 2.0 >= -tol;
}

GprimeCoefficients gprime_coefficients(double eps, double f) {
    return {f, eps / 2.0 - 2.0 * f, 1.0 - eps - f, 1.5 * eps - 1.0 + 2.0 * f};
}

GaussianPolyOvm gprime_family(double eps, double f, double theta) {
    check_unit(eps, "eps");
    const GprimeCoefficients k = gprime_coefficients(eps, f);
    const Poly l = linear_form(1.0, 1.0, theta);
    const Poly q = linear_form_norm(1.0, 1.0, theta);
    GaussianPolyOvm o;
    o.labels = {"0", "1"};
    o.densities = {
        hermitian_density(Poly::constant(1.0 - eps / 2.0), l * k.f,
                          q * k.f + Poly::constant(k.g)),
        hermitian_density(Poly::constant(eps / 2.0), l * k.h, q * k.h + Poly::constant(k.i)),
    };
    return o;
}

std::optional<std::pair<double, double>> feasible_f_interval(double eps, double tol) {
    check_unit(eps, "eps");
    if (eps <= 0.5) {
        return std::nullopt;
    }
    const double lo = std::max({0.5 - 0.75 * eps, 0.0, 1.0 - 1.5 * eps});
    const double hi = std::min({eps / 4.0, 1.0 - eps / 2.0, 1.0 - eps});
    if (lo <= hi) {
        return std::make_pair(lo, hi);
    }
    if (lo - hi <= tol) {
        return std::make_pair(hi, hi);
    }
    return std::nullopt;
}

GaussianPolyOvm improved_joint_Gprime(double eps, double f, double theta, double tol) {
    const auto iv = feasible_f_interval(eps, tol);
    if (!iv) {
        throw std::domain_error("improved_joint_Gprime: feasible f interval is empty at eps = " +
                                std::to_string(eps));
    }
    if (f < iv->first - tol || f > iv->second + tol) {
        throw std::domain_error("improved_joint_Gprime: f outside the feasible interval [" +
                                std::to_string(iv->first) + ", " + std::to_string(iv->second) +
                                "]");
    }
    return gprime_family(eps, f, theta);
}

std::pair<GaussianPolyOvm, GaussianPolyOvm> improved_pair_joints(double eps, double theta) {
    check_unit(eps, "eps");
    if (eps < 0.5) {
        throw std::domain_error("improved_pair_joints: requires eps >= 1/2");
    }
    const double r = std::min(eps / 2.0, 1.0 - eps);
    const double p = 1.0 - eps - r;
    const double q = eps / 2.0 - p;
    const double s = 1.0 - eps / 2.0 - r;
    const Poly y = Poly::y();
    const Poly ly = y * (kSqrt2 * std::conj(phase(theta)));

    GaussianPolyOvm two;
    two.labels = {"0", "1"};
    two.has_x = false;
    two.densities = {
        hermitian_density(Poly::constant(1.0 - eps / 2.0), ly * p,
                          y * y * (2.0 * p) + Poly::constant(q)),
        hermitian_density(Poly::constant(eps / 2.0), ly * r, y * y * (2.0 * r) + Poly::constant(s)),
    };

    const double w = 1.0 - eps;
    GaussianPolyOvm one;
    one.labels = {kAllLabels};
    one.densities = {hermitian_density(Poly::constant(1.0), linear_form(w, w, theta),
                                       linear_form_norm(1.0, 1.0, theta) * w +
                                           Poly::constant(2.0 * eps - 1.0))};
    return {two, one};
}

double phase_f(double eps) {
    check_unit(eps, "eps");
    if (eps == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return (1.0 - eps) / (std::sqrt(eps / 2.0) * std::sqrt(1.0 - eps / 2.0));
}

TrigOvm phase_number_joint(double eps, Complex c, Complex d, double tol) {
    const double f = phase_f(eps);
    if (f > 2.0 + tol) {
        throw std::domain_error("phase_number_joint: f(eps) > 2, no admissible (c, d)");
    }
    if (std::abs(c) > 1.0 + tol || std::abs(d) > 1.0 + tol) {
        throw std::invalid_argument("phase_number_joint: c and d must lie in the unit disc");
    }
    if (std::abs(c + d - f) > tol) {
        throw std::invalid_argument("phase_number_joint: c + d must equal f(eps)");
    }
    const double k = std::sqrt(eps / 2.0) * std::sqrt(1.0 - eps / 2.0);
    return TrigOvm{{"0", "1"},
                   {TrigEntry{1.0 - eps / 2.0, eps / 2.0, 0.0, c * k},
                    TrigEntry{eps / 2.0, 1.0 - eps / 2.0, 0.0, d * k}}};
}

std::vector<std::pair<double, double>> phase_curve(const std::vector<double> &eps_grid) {
    std::vector<std::pair<double, double>> out;
    out.reserve(eps_grid.size());
    for (double e : eps_grid) {
        out.emplace_back(e, phase_f(e));
    }
    return out;
}

}  // namespace naimark::continuous
