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

#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>

#include "naimark/continuous.hpp"
#include "oracles.hpp"

using namespace naimark;
using namespace naimark::continuous;

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kHalfWidth = 8.0;

double integrate_1d(const std::function<double(double)> &f) {
    return gauss_kronrod<double, 61>::integrate(f, -kHalfWidth, kHalfWidth, 10, 1e-13);
}

// Entrywise integral of a density against the normalized Gaussian weight in
// the variables the OVM carries.
Matrix2 quadrature_effect(const GaussianPolyOvm &o, const PolyMatrix &m) {
    Matrix2 out;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            for (int part = 0; part < 2; ++part) {
                auto entry = [&](double x, double y) {
                    const Complex v = m.at(x, y)(r, c);
                    return part == 0 ? v.real() : v.imag();
                };
                double val = 0.0;
                if (o.has_x && o.has_y) {
                    val = integrate_1d([&](double x) {
                              return integrate_1d([&](double y) {
                                         return entry(x, y) * std::exp(-y * y);
                                     }) *
                                     std::exp(-x * x);
                          }) /
                          oracle::kPi;
                } else if (o.has_x) {
                    val = integrate_1d([&](double x) { return entry(x, 0) * std::exp(-x * x); }) /
                          std::sqrt(oracle::kPi);
                } else {
                    val = integrate_1d([&](double y) { return entry(0, y) * std::exp(-y * y); }) /
                          std::sqrt(oracle::kPi);
                }
                if (part == 0) {
                    out(r, c) = val;
                } else {
                    out(r, c) += Complex(0.0, val);
                }
            }
        }
    }
    return out;
}

double poly_diff(const Poly &a, const Poly &b) { return (a - b).max_abs(); }

double matrix_diff(const PolyMatrix &a, const PolyMatrix &b) {
    return std::max({poly_diff(a.a00, b.a00), poly_diff(a.a01, b.a01), poly_diff(a.a10, b.a10),
                     poly_diff(a.a11, b.a11)});
}

std::vector<GaussianPolyOvm> sample_families(std::mt19937_64 &rng, int count) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> th(0.0, oracle::kPi);
    std::vector<GaussianPolyOvm> out;
    for (int t = 0; t < count; ++t) {
        const NoiseParams p{u(rng), u(rng), u(rng), th(rng)};
        out.push_back(quadrature_prono(p.theta, p.eps_theta, t % 2 ? Variable::X : Variable::Y));
        out.push_back(triple_joint_G(p));
        out.push_back(joint_G1(p));
        out.push_back(joint_G2(p));
        out.push_back(joint_G3(p));
        const double e = 0.5 + 0.5 * u(rng);
        out.push_back(gprime_family(e, u(rng) * 0.3, p.theta));
        const auto pair = improved_pair_joints(e, p.theta);
        out.push_back(pair.first);
        out.push_back(pair.second);
    }
    return out;
}

}  // namespace

TEST(Continuous, PolyArithmetic) {
    const Poly p = Poly::x() * Poly::x() + Poly::y() * Complex(0, 2) + Poly::constant(3);
    EXPECT_EQ(p.degree(), 2);
    EXPECT_TRUE(p.depends_on_x());
    EXPECT_TRUE(p.depends_on_y());
    EXPECT_EQ(p(2.0, 1.0), Complex(7, 2));
    EXPECT_EQ(p.conj()(2.0, 1.0), Complex(7, -2));
    const Poly q = p * p;
    EXPECT_EQ(q.degree(), 4);
    EXPECT_LE(std::abs(q(0.3, -0.7) - p(0.3, -0.7) * p(0.3, -0.7)), 1e-13);
    EXPECT_THROW(q * Poly::x(), std::domain_error);
    EXPECT_EQ(Poly().degree(), -1);
    EXPECT_EQ((p - p).degree(), -1);
    EXPECT_EQ(Poly::monomial(1, 2, 5.0).coeff(1, 2), Complex(5.0));
}

TEST(Continuous, GaussianMomentsAgainstQuadrature) {
    for (int n = 0; n <= 8; ++n) {
        const double ref =
            integrate_1d([n](double t) { return std::pow(t, n) * std::exp(-t * t); }) /
            std::sqrt(oracle::kPi);
        EXPECT_NEAR(gaussian_moment(n), ref, 1e-12) << n;
    }
    EXPECT_DOUBLE_EQ(gaussian_moment(2), 0.5);
    EXPECT_DOUBLE_EQ(gaussian_moment(4), 0.75);
}

TEST(Continuous, PolyIntegrationMatchesQuadrature) {
    std::mt19937_64 rng(51);
    std::normal_distribution<double> n;
    for (int t = 0; t < 20; ++t) {
        Poly p;
        for (int a = 0; a <= 4; ++a) {
            for (int b = 0; a + b <= 4; ++b) {
                p.set_coeff(a, b, Complex(n(rng), n(rng)));
            }
        }
        GaussianPolyOvm o{{kAllLabels}, {PolyMatrix{p, p, p, p}}, true, true};
        const Matrix2 ref = quadrature_effect(o, o.densities[0]);
        EXPECT_LE(std::abs(p.expectation() - ref(0, 0)), 1e-8);
        const double y0 = 0.37;
        const Complex partial =
            integrate_1d([&](double x) { return p(x, y0).real() * std::exp(-x * x); }) /
            std::sqrt(oracle::kPi);
        EXPECT_NEAR(p.integrate_x()(0.0, y0).real(), partial.real(), 1e-8);
        EXPECT_FALSE(p.integrate_x().depends_on_x());
        EXPECT_FALSE(p.integrate_y().depends_on_y());
    }
}

TEST(Continuous, BuiltOvmsAreHermitianNormalizedAndMatchQuadrature) {
    std::mt19937_64 rng(52);
    int checked = 0;
    for (const GaussianPolyOvm &o : sample_families(rng, 3)) {
        EXPECT_TRUE(is_pointwise_hermitian(o));
        EXPECT_LE(normalization_residual(o), 1e-12);
        const auto eff = label_effects(o);
        Matrix2 total = Matrix2::Zero();
        for (size_t i = 0; i < o.size(); ++i) {
            const Matrix2 q = quadrature_effect(o, o.densities[i]);
            EXPECT_LE(oracle::max_abs(q - eff[i]), 1e-8);
            total += q;
        }
        EXPECT_LE(oracle::max_abs(total - Matrix2::Identity()), 1e-8);
        ++checked;
    }
    EXPECT_EQ(checked, 24);
}

TEST(Continuous, QuadratureExamples) {
    const GaussianPolyOvm noise = quadrature_prono(0.4, 1.0);
    EXPECT_LE(oracle::max_abs(noise.densities[0].at(1.3, 0) - Matrix2::Identity()), 1e-15);
    EXPECT_THROW(quadrature_prono(0.0, 1.5), std::invalid_argument);
}

TEST(Continuous, NoiselessQuadratureIsHermiteProduct) {
    const GaussianPolyOvm q = quadrature_prono(0.0, 0.0);
    for (int k = -40; k <= 40; ++k) {
        const double x = k * 0.1;
        const Matrix2 m = q.densities[0].at(x, 0) * std::exp(-x * x) / std::sqrt(oracle::kPi);
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                const double ref = oracle::hermite_function(a, x) * oracle::hermite_function(b, x);
                EXPECT_NEAR(m(a, b).real(), ref, 1e-14);
                EXPECT_NEAR(m(a, b).imag(), 0.0, 1e-15);
            }
        }
    }
}

TEST(Continuous, NumberAndPhaseExamples) {
    const auto n0 = number_prono(0.0);
    EXPECT_EQ(n0[0](0, 0), Complex(1.0));
    EXPECT_EQ(n0[0](1, 1), Complex(0.0));
    EXPECT_EQ(n0[1](1, 1), Complex(1.0));
    const TrigOvm ph = phase_prono(1.0);
    for (double t : {0.0, 1.0, 4.0}) {
        EXPECT_LE(oracle::max_abs(ph.densities[0].at(t) - Matrix2::Identity()), 1e-15);
    }
    EXPECT_LE(normalization_residual(phase_prono(0.3)), 1e-15);
    EXPECT_DOUBLE_EQ(phase_f(1.0), 0.0);
    EXPECT_TRUE(std::isinf(phase_f(0.0)));
}

TEST(Continuous, TripleJointMarginals) {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        const NoiseParams p{u(rng), u(rng), u(rng), u(rng) * oracle::kPi};
        const GaussianPolyOvm g1 = joint_G1(p);
        EXPECT_LE(matrix_diff(marginalize(g1, Variable::Y).densities[0],
                              quadrature_prono(0.0, p.eps0, Variable::X).densities[0]),
                  1e-12);
        EXPECT_LE(matrix_diff(marginalize(g1, Variable::X).densities[0],
                              quadrature_prono(p.theta, p.eps_theta, Variable::Y).densities[0]),
                  1e-12);
        const auto num = number_prono(p.eps);
        for (const GaussianPolyOvm &g : {joint_G2(p), joint_G3(p)}) {
            const auto eff = label_effects(g);
            EXPECT_LE(oracle::max_abs(eff[0] - num[0]), 1e-12);
            EXPECT_LE(oracle::max_abs(eff[1] - num[1]), 1e-12);
        }
        EXPECT_FALSE(joint_G2(p).has_x);
        EXPECT_FALSE(joint_G3(p).has_y);
    }
}

TEST(Continuous, G1Display) {
    const NoiseParams p{0.8, 0.3, 0.6, 1.1};
    const PolyMatrix g1 = joint_G1(p).densities[0];
    const double s0 = 1 - p.eps0;
    const double st = 1 - p.eps_theta;
    const Complex e = std::polar(1.0, -p.theta);
    for (auto [x, y] : {std::pair{0.3, -1.2}, std::pair{2.0, 0.5}, std::pair{-1.0, -1.0}}) {
        const Complex l = std::sqrt(2.0) * (s0 * x + st * y * e);
        const double r = 2 * s0 * x * x + 2 * st * y * y + 4 * s0 * st * std::cos(p.theta) * x * y +
                         p.eps0 + p.eps_theta - 1;
        EXPECT_LE(std::abs(g1.a00(x, y) - 1.0), 1e-15);
        EXPECT_LE(std::abs(g1.a01(x, y) - l), 1e-14);
        EXPECT_LE(std::abs(g1.a11(x, y) - r), 1e-14);
        const double det = 2 * s0 * p.eps0 * x * x + 2 * st * p.eps_theta * y * y + p.eps0 +
                           p.eps_theta - 1;
        EXPECT_NEAR(g1.determinant()(x, y).real(), det, 1e-13);
    }
}

TEST(Continuous, QuadraticInfimum) {
    Poly p = Poly::constant(3.0);
    p.set_coeff(2, 0, 1.0);
    p.set_coeff(0, 2, 2.0);
    p.set_coeff(1, 0, -2.0);
    const QuadraticInfimum q = quadratic_infimum(p);
    EXPECT_TRUE(q.attained);
    EXPECT_NEAR(q.value, 2.0, 1e-14);
    EXPECT_NEAR(q.point[0], 1.0, 1e-14);
    EXPECT_NEAR(q.point[1], 0.0, 1e-14);

    Poly saddle;
    saddle.set_coeff(1, 1, 1.0);
    const QuadraticInfimum s = quadratic_infimum(saddle);
    EXPECT_TRUE(std::isinf(s.value));
    EXPECT_LT(saddle(s.point[0], s.point[1]).real(), -1.0);

    Poly line = Poly::x();
    const QuadraticInfimum l = quadratic_infimum(line);
    EXPECT_TRUE(std::isinf(l.value));
    EXPECT_LT(line(l.point[0], l.point[1]).real(), -1.0);

    EXPECT_THROW(quadratic_infimum(Poly::x() * Poly::x() * Poly::x()), UnsupportedDegree);
    EXPECT_THROW(quadratic_infimum(Poly::constant(Complex(0, 1))), std::domain_error);
}

TEST(Continuous, QuadraticInfimumAgainstSampling) {
    std::mt19937_64 rng(54);
    std::normal_distribution<double> n;
    for (int t = 0; t < 300; ++t) {
        Poly p;
        for (int a = 0; a <= 2; ++a) {
            for (int b = 0; a + b <= 2; ++b) {
                p.set_coeff(a, b, n(rng));
            }
        }
        const QuadraticInfimum q = quadratic_infimum(p);
        double sampled = INFINITY;
        for (int a = -60; a <= 60; ++a) {
            for (int b = -60; b <= 60; ++b) {
                sampled = std::min(sampled, p(a * 0.1, b * 0.1).real());
            }
        }
        EXPECT_LE(q.value, sampled + 1e-12);
        if (q.attained) {
            EXPECT_NEAR(p(q.point[0], q.point[1]).real(), q.value, 1e-9);
        }
    }
}

TEST(Continuous, PositivityExamples) {
    EXPECT_TRUE(ovm_is_positive(triple_joint_G({1.0, 1.0, 1.0, 0.7})).positive);
    const double b = kTripleEqualNoise;
    EXPECT_TRUE(ovm_is_positive(triple_joint_G({b, b, b, 1.0})).positive);
    EXPECT_FALSE(ovm_is_positive(triple_joint_G({0.7, 0.7, 0.7, 1.0})).positive);
    EXPECT_TRUE(ovm_is_positive(joint_G1({0.0, 0.5, 0.5, 1.0})).positive);
    const PositivityReport r = ovm_is_positive(joint_G1({0.0, 0.49, 0.49, 1.0}));
    EXPECT_FALSE(r.positive);
    // The constant term eps0 + eps_theta - 1 of the lower diagonal is already negative.
    EXPECT_EQ(r.quantity, "diag1");
    EXPECT_EQ(r.witness, (std::array<double, 2>{0.0, 0.0}));
}

TEST(Continuous, PositivityAgreesWithGridSampling) {
    std::mt19937_64 rng(55);
    int pos = 0;
    int neg = 0;
    for (const GaussianPolyOvm &o : sample_families(rng, 10)) {
        const PositivityReport r = ovm_is_positive(o);
        if (r.positive) {
            ++pos;
            EXPECT_GE(oracle::sampled_min_eig(o), -1e-9);
        } else {
            ++neg;
            const Matrix2 m = o.densities[*r.label].at(r.witness[0], r.witness[1]);
            EXPECT_LT(oracle::eig2(m)[0], 0.0);
            EXPECT_LT(r.value, 0.0);
        }
    }
    EXPECT_GT(pos, 10);
    EXPECT_GT(neg, 10);
}

TEST(Continuous, TrigPositivityAgreesWithSampling) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::mt19937_64 rng(56);
    for (int t = 0; t < 200; ++t) {
        const double eps = u(rng);
        const TrigOvm o = phase_prono(eps);
        EXPECT_TRUE(ovm_is_positive(o).positive);
        const TrigEntry bad{u(rng), u(rng), Complex(u(rng), 0), Complex(u(rng), 0)};
        const TrigOvm b{{kAllLabels}, {bad}};
        const PositivityReport r = ovm_is_positive(b);
        const double sampled = oracle::sampled_min_eig(b);
        if (r.positive) {
            EXPECT_GE(sampled, -1e-12);
        } else {
            EXPECT_LT(oracle::eig2(bad.at(r.witness[0]))[0], 0.0);
        }
    }
}

TEST(Continuous, ThresholdExamples) {
    const double b = kTripleEqualNoise;
    EXPECT_TRUE(threshold_triple({b, b, b, 1.0}));
    EXPECT_FALSE(threshold_triple({b - 1e-6, b - 1e-6, b - 1e-6, 1.0}));
    EXPECT_TRUE(threshold_pair_quadratures(0.5, 0.5));
    EXPECT_FALSE(threshold_pair_quadratures(0.0, 0.0));
    EXPECT_TRUE(threshold_pair_number_quadrature(kNumberQuadratureEqualNoise,
                                                 kNumberQuadratureEqualNoise));
    EXPECT_FALSE(threshold_pair_number_quadrature(0.58, 0.58));
    std::mt19937_64 rng(57);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
        const double e0 = u(rng);
        const double et = u(rng);
        // At eps = 1 the triple condition reduces to the pair condition.
        if (std::abs(e0 + et - 1) > 1e-9) {
            EXPECT_EQ(threshold_triple({1.0, e0, et, 1.0}), threshold_pair_quadratures(e0, et));
        }
    }
}

TEST(Continuous, ThresholdMonotone) {
    std::mt19937_64 rng(58);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 5000; ++t) {
        const NoiseParams p{u(rng), u(rng), u(rng), 1.0};
        const double d = 0.05 * u(rng);
        auto bump = [&](double v) { return std::min(1.0, v + d); };
        if (threshold_triple(p)) {
            EXPECT_TRUE(threshold_triple({bump(p.eps), p.eps0, p.eps_theta, 1.0}));
            EXPECT_TRUE(threshold_triple({p.eps, bump(p.eps0), p.eps_theta, 1.0}));
            EXPECT_TRUE(threshold_triple({p.eps, p.eps0, bump(p.eps_theta), 1.0}));
        }
        if (threshold_pair_quadratures(p.eps0, p.eps_theta)) {
            EXPECT_TRUE(threshold_pair_quadratures(bump(p.eps0), p.eps_theta));
            EXPECT_TRUE(threshold_pair_quadratures(p.eps0, bump(p.eps_theta)));
        }
        if (threshold_pair_number_quadrature(p.eps, p.eps0)) {
            EXPECT_TRUE(threshold_pair_number_quadrature(bump(p.eps), p.eps0));
            EXPECT_TRUE(threshold_pair_number_quadrature(p.eps, bump(p.eps0)));
        }
    }
}

TEST(Continuous, ThresholdsAreThetaIndependentAndMatchPositivity) {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 400; ++t) {
        NoiseParams p{u(rng), u(rng), u(rng), 0.0};
        const bool ref = threshold_triple(p);
        bool margin = std::abs(p.eps / (2 - p.eps) + p.eps0 + p.eps_theta - 2) > 1e-9;
        for (double th : {0.3, 1.0, 1.5707963267948966, 2.5, 3.1}) {
            p.theta = th;
            EXPECT_EQ(threshold_triple(p), ref);
            if (margin) {
                EXPECT_EQ(ovm_is_positive(triple_joint_G(p)).positive, ref);
            }
        }
        margin = std::abs(p.eps0 + p.eps_theta - 1) > 1e-9;
        if (margin) {
            EXPECT_EQ(ovm_is_positive(joint_G1(p)).positive,
                      threshold_pair_quadratures(p.eps0, p.eps_theta));
        }
    }
}

TEST(Continuous, GprimeAtFourSevenths) {
    const double e = kImprovedTripleEqualNoise;
    const auto iv = feasible_f_interval(e);
    ASSERT_TRUE(iv.has_value());
    EXPECT_NEAR(iv->first, 1.0 / 7, 1e-15);
    EXPECT_EQ(iv->first, iv->second);
    const GprimeCoefficients k = gprime_coefficients(e, iv->first);
    EXPECT_NEAR(k.f, 1.0 / 7, 1e-15);
    EXPECT_NEAR(k.g, 0.0, 1e-15);
    EXPECT_NEAR(k.h, 2.0 / 7, 1e-15);
    EXPECT_NEAR(k.i, 1.0 / 7, 1e-15);
    for (double th : {0.5, 1.0, 2.0}) {
        const GaussianPolyOvm g = improved_joint_Gprime(e, iv->first, th);
        EXPECT_TRUE(ovm_is_positive(g).positive);
        EXPECT_GE(oracle::sampled_min_eig(g, 101), -1e-12);
    }
    EXPECT_FALSE(feasible_f_interval(0.5).has_value());
    EXPECT_FALSE(feasible_f_interval(0.56).has_value());
    EXPECT_THROW(improved_joint_Gprime(0.56, 0.1, 1.0), std::domain_error);
    EXPECT_THROW(improved_joint_Gprime(0.8, 0.3, 1.0), std::domain_error);
}

TEST(Continuous, GprimeConstraintsAcrossInterval) {
    for (int k = 58; k <= 100; ++k) {
        const double e = k / 100.0;
        const auto iv = feasible_f_interval(e);
        ASSERT_TRUE(iv.has_value()) << e;
        for (double f : {iv->first, 0.5 * (iv->first + iv->second), iv->second}) {
            const GprimeCoefficients c = gprime_coefficients(e, f);
            EXPECT_NEAR(c.f + c.h, 1 - e, 1e-15);
            EXPECT_NEAR(c.g + c.i, 2 * e - 1, 1e-15);
            EXPECT_NEAR(2 * c.f + c.g, e / 2, 1e-15);
            const GaussianPolyOvm g = improved_joint_Gprime(e, f, 1.0);
            EXPECT_TRUE(ovm_is_positive(g).positive) << e << " " << f;
            EXPECT_LE(normalization_residual(g), 1e-12);
        }
    }
}

TEST(Continuous, GprimeFailsAtHalfWithWitness) {
    const PositivityReport r = ovm_is_positive(gprime_family(0.5, 0.125, 1.0));
    EXPECT_FALSE(r.positive);
    ASSERT_TRUE(r.label.has_value());
    EXPECT_EQ(r.witness, (std::array<double, 2>{1.0, 0.0}));
    const Matrix2 m = gprime_family(0.5, 0.125, 1.0).densities[*r.label].at(1.0, 0.0);
    EXPECT_LT(oracle::eig2(m)[0], 0.0);
}

TEST(Continuous, ImprovedPairJointsAtHalf) {
    const double th = 0.9;
    const auto [two, one] = improved_pair_joints(0.5, th);
    const PolyMatrix &d0 = two.densities[0];
    EXPECT_NEAR(d0.a00.coeff(0, 0).real(), 0.75, 1e-15);
    EXPECT_LE(std::abs(d0.a01.coeff(0, 1) - 0.25 * std::sqrt(2.0) * std::polar(1.0, -th)), 1e-15);
    EXPECT_NEAR(d0.a11.coeff(0, 2).real(), 0.5, 1e-15);
    EXPECT_NEAR(d0.a11.coeff(0, 0).real(), 0.0, 1e-15);
    EXPECT_TRUE(ovm_is_positive(two).positive);
    EXPECT_TRUE(ovm_is_positive(one).positive);
    EXPECT_THROW(improved_pair_joints(0.4, th), std::domain_error);
}

TEST(Continuous, ImprovedPairJointMarginals) {
    for (int k = 50; k <= 100; k += 5) {
        const double e = k / 100.0;
        const double th = 1.2;
        const auto [two, one] = improved_pair_joints(e, th);
        EXPECT_TRUE(ovm_is_positive(two).positive);
        EXPECT_TRUE(ovm_is_positive(one).positive);
        const auto eff = label_effects(two);
        const auto num = number_prono(e);
        EXPECT_LE(oracle::max_abs(eff[0] - num[0]), 1e-12);
        EXPECT_LE(oracle::max_abs(eff[1] - num[1]), 1e-12);
        EXPECT_LE(matrix_diff(marginalize_labels(two).densities[0],
                              quadrature_prono(th, e, Variable::Y).densities[0]),
                  1e-12);
        EXPECT_LE(matrix_diff(marginalize(one, Variable::Y).densities[0],
                              quadrature_prono(0.0, e, Variable::X).densities[0]),
                  1e-12);
        EXPECT_LE(matrix_diff(marginalize(one, Variable::X).densities[0],
                              quadrature_prono(th, e, Variable::Y).densities[0]),
                  1e-12);
    }
}

TEST(Continuous, PhaseNumberJoint) {
    const double e = kPhaseNumberMinNoise;
    EXPECT_NEAR(phase_f(e), 2.0, 1e-12);
    const TrigOvm j = phase_number_joint(e, 1.0, 1.0);
    EXPECT_TRUE(ovm_is_positive(j).positive);
    EXPECT_GE(oracle::sampled_min_eig(j), -1e-12);
    const auto eff = label_effects(j);
    const auto num = number_prono(e);
    EXPECT_LE(oracle::max_abs(eff[0] - num[0]), 1e-12);
    EXPECT_LE(oracle::max_abs(eff[1] - num[1]), 1e-12);
    const TrigEntry sum = trig_label_sum(j);
    const TrigEntry ref = phase_prono(e).densities[0];
    for (double t : {0.0, 0.8, 2.2, 5.0}) {
        EXPECT_LE(oracle::max_abs(sum.at(t) - ref.at(t)), 1e-12);
    }
    EXPECT_THROW(phase_number_joint(0.2, 1.0, 1.0), std::domain_error);
    EXPECT_THROW(phase_number_joint(0.5, 1.5, phase_f(0.5) - 1.5), std::invalid_argument);
    EXPECT_THROW(phase_number_joint(0.5, 0.1, 0.1), std::invalid_argument);
}

TEST(Continuous, PhaseCurveDecreasing) {
    std::vector<double> grid;
    for (int k = 1; k <= 100; ++k) {
        grid.push_back(k / 100.0);
    }
    const auto curve = phase_curve(grid);
    ASSERT_EQ(curve.size(), grid.size());
    for (size_t i = 1; i < curve.size(); ++i) {
        EXPECT_LT(curve[i].second, curve[i - 1].second);
    }
    EXPECT_EQ(curve.back().second, 0.0);
}

TEST(Continuous, MarginalizeErrors) {
    EXPECT_THROW(marginalize(quadrature_prono(0.0, 0.5, Variable::X), Variable::Y),
                 std::invalid_argument);
}
