// Copyright 2026 The cvcorr Authors
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

#include <cmath>
#include <random>

#include "cvcorr/correlations.hpp"
#include "cvcorr/errors.hpp"
#include "cvcorr/state_factory.hpp"
#include "support.hpp"

namespace cvcorr {
namespace {

using Op = SymplecticOperation<double>;

// f(cosh 2 / 4), the marginal entropy of the r = 1 two-mode squeezed vacuum
constexpr double kPureEntropy = 1.6198220928977023;

Covariance ideal(double r, double n) { return inject_noise_ideal(ideal_tms(r), n); }

Covariance locally_scrambled(const Covariance &v, std::mt19937_64 &rng) {
    const auto ops = Op::compose(Op::local(2, 0, testing::random_local_symplectic(rng)),
                                 Op::local(2, 1, testing::random_local_symplectic(rng)));
    return apply_symplectic(v, ops);
}

// det of A's conditional covariance (vacuum = 1 units) after a pure Gaussian
// measurement on B with seed rotation theta and squeezing s.
double conditional_det(const Covariance &v, double theta, double s) {
    const Eigen::Matrix2d alpha = v.block(0, 0);
    const Eigen::Matrix2d beta = v.block(1, 1);
    const Eigen::Matrix2d gamma = v.block(0, 1);
    Eigen::Matrix2d rot;
    rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    const Eigen::Matrix2d seed = rot * Eigen::Vector2d(std::exp(-2 * s), std::exp(2 * s)).asDiagonal() *
                                 rot.transpose() / 4.0;
    const Eigen::Matrix2d cond = alpha - gamma * (beta + seed).inverse() * gamma.transpose();
    return (4.0 * cond).determinant();
}

double homodyne_det(const Covariance &v, double theta) {
    Eigen::Matrix2d rot;
    rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    const auto rotated = apply_symplectic(v, Op::local(2, 1, rot));
    return (4.0 * homodyne_condition(rotated, 1, Quadrature::Q).matrix()).determinant();
}

// Grid over the measurement manifold plus the homodyne edge, refined by
// shrinking the search box around the best point.
double brute_force_min_det(const Covariance &v) {
    double best = std::numeric_limits<double>::infinity();
    double best_theta = 0;
    double best_s = 0;
    for (int i = 0; i < 90; ++i) {
        const double theta = M_PI * i / 90.0;
        for (int j = 0; j <= 80; ++j) {
            const double s = -5.0 + 10.0 * j / 80.0;
            const double d = conditional_det(v, theta, s);
            if (d < best) {
                best = d;
                best_theta = theta;
                best_s = s;
            }
        }
    }
    // homodyne edge, refined in angle
    double h_theta = 0;
    double h_best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 360; ++i) {
        const double d = homodyne_det(v, M_PI * i / 360.0);
        if (d < h_best) {
            h_best = d;
            h_theta = M_PI * i / 360.0;
        }
    }
    for (double step = M_PI / 360.0; step > 1e-12; step *= 0.5) {
        for (double t : {h_theta - step, h_theta + step}) {
            const double d = homodyne_det(v, t);
            if (d < h_best) {
                h_best = d;
                h_theta = t;
            }
        }
    }
    best = std::min(best, h_best);

    double dt = M_PI / 90.0;
    double ds = 10.0 / 80.0;
    for (int round = 0; round < 40; ++round) {
        for (int i = -4; i <= 4; ++i) {
            for (int j = -4; j <= 4; ++j) {
                const double theta = best_theta + dt * i / 4.0;
                const double s = best_s + ds * j / 4.0;
                const double d = conditional_det(v, theta, s);
                if (d < best) {
                    best = d;
                    best_theta = theta;
                    best_s = s;
                }
            }
        }
        dt *= 0.6;
        ds *= 0.6;
    }
    return best;
}

TEST(MutualInformation, Examples) {
    EXPECT_NEAR(mutual_information(Covariance::vacuum(2)), 0.0, 1e-14);
    EXPECT_NEAR(mutual_information(ideal_tms(1.0)), 2 * kPureEntropy, 1e-12);
    EXPECT_NEAR(mutual_information(tensor(Covariance::thermal(0.4), Covariance::thermal(2.0))), 0.0, 1e-12);
    EXPECT_THROW(mutual_information(Covariance::vacuum(3)), Error);
}

TEST(Gamma, Examples) {
    EXPECT_NEAR(eof_gamma(ideal_tms(1.0)), 1.0, 1e-10);
    EXPECT_NEAR(eof_gamma(Covariance::vacuum(2)), 0.0, 1e-12);
    for (double r : {0.1, 0.9, 2.0}) EXPECT_NEAR(eof_gamma(ideal(r, 1.0)), 0.0, 1e-10) << r;
    EXPECT_NEAR(gamma_ideal(0.7, 0.0), 0.7, 1e-15);
    EXPECT_NEAR(gamma_ideal(1.3, 1.0), 0.0, 1e-15);
    EXPECT_NEAR(gamma_ideal(1.0, 0.5), 0.259540, 1e-6);
    EXPECT_NEAR(gamma_ideal(1.0, 0.5), 0.5 * std::log(7.889056 / 4.694528), 1e-6);
}

TEST(Gamma, PartialTransposeRouteMatchesClosedForm) {
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        const double r = 0.1 + 1.9 * i / 19.0;
        for (int j = 0; j < 20; ++j) {
            const double n = 5.0 * j / 19.0;
            worst = std::max(worst, std::abs(eof_gamma(ideal(r, n)) - gamma_ideal(r, n)));
        }
    }
    EXPECT_LT(worst, 1e-9);
}

TEST(Gamma, SignedBeyondSuddenDeath) {
    EXPECT_LT(eof_gamma(ideal(1.0, 2.0)), 0.0);
    EXPECT_LT(eof_lower_bound(ideal(1.0, 2.0)), 0.0);
    EXPECT_NEAR(eof_from_gamma(-0.3), -eof_from_gamma(0.3), 1e-15);
}

TEST(Eof, Examples) {
    EXPECT_NEAR(eof_lower_bound(ideal_tms(1.0)), kPureEntropy, 1e-12);
    EXPECT_NEAR(eof_lower_bound(ideal(0.4, 1.0)), 0.0, 1e-9);
    EXPECT_NEAR(eof_lower_bound(ideal(1.0, 0.5)), 0.2555, 1e-4);
}

TEST(Discord, Examples) {
    const auto product = tensor(Covariance::thermal(0.5), Covariance::thermal(1.5));
    EXPECT_NEAR(discord(product, Party::A), 0.0, 1e-12);
    EXPECT_NEAR(discord(product, Party::B), 0.0, 1e-12);
    EXPECT_NEAR(discord(ideal_tms(1.0), Party::A), kPureEntropy, 1e-12);
    EXPECT_NEAR(discord(ideal_tms(1.0), Party::B), kPureEntropy, 1e-12);
    const double far = discord(ideal(1.0, 100.0), Party::A);
    EXPECT_GT(far, 0.0);
    EXPECT_LT(far, 0.05);
}

TEST(Discord, PureStatesCoincideWithEof) {
    for (double r : {0.25, 0.5, 1.0, 1.5}) {
        const auto rep = correlation_report(ideal_tms(r));
        EXPECT_LT(std::abs(rep.d_a - rep.e_f), 1e-8) << r;
        EXPECT_LT(std::abs(rep.d_b - rep.e_f), 1e-8) << r;
    }
}

TEST(Discord, ConditionalDeterminantMatchesBruteForce) {
    std::mt19937_64 rng(41);
    for (int k = 0; k < 40; ++k) {
        const auto v = testing::random_two_mode_state(rng);
        auto sf = standard_form(v);
        sf.a *= 4;
        sf.b *= 4;
        sf.c_plus *= 4;
        sf.c_minus *= 4;
        const double closed = min_conditional_determinant(sf);
        const double brute = brute_force_min_det(v);
        EXPECT_NEAR(closed, brute, 1e-6 * std::max(1.0, brute)) << k;
    }
}

TEST(Discord, BoundedByMutualInformation) {
    std::mt19937_64 rng(8);
    for (int k = 0; k < 1000; ++k) {
        const auto v = k % 2 ? testing::random_two_mode_state(rng) : testing::random_factory_state(rng);
        const auto rep = correlation_report(v);
        EXPECT_GE(rep.d_a, 0.0);
        EXPECT_GE(rep.d_b, 0.0);
        EXPECT_LE(rep.d_a, rep.i_ab + 1e-9);
        EXPECT_LE(rep.d_b, rep.i_ab + 1e-9);
    }
}

TEST(Discord, RobustAtLargeNoise) {
    const double r = squeezing_db_to_r(6.0);
    double prev = std::numeric_limits<double>::infinity();
    for (double n = 1e-3; n <= 1000.0 * 1.0001; n *= std::pow(10.0, 0.25)) {
        const double d = discord(ideal(r, n), Party::A);
        EXPECT_GT(d, 0.0) << n;
        EXPECT_LT(d, prev) << n;
        prev = d;
    }
}

TEST(Invariance, LocalSymplectics) {
    std::mt19937_64 rng(123);
    for (int k = 0; k < 200; ++k) {
        const auto v = testing::random_two_mode_state(rng);
        const auto w = locally_scrambled(v, rng);
        const auto a = correlation_report(v);
        const auto b = correlation_report(w);
        EXPECT_NEAR(a.d_a, b.d_a, 1e-9);
        EXPECT_NEAR(a.d_b, b.d_b, 1e-9);
        EXPECT_NEAR(a.e_f, b.e_f, 1e-9);
    }
}

TEST(Report, Invariants) {
    const double r = 1.0;
    const auto pure = correlation_report(ideal_tms(r));
    EXPECT_NEAR(pure.delta_a, 0.0, 1e-8);
    EXPECT_NEAR(pure.delta_b, 0.0, 1e-8);
    EXPECT_NEAR(pure.delta_ab, 0.0, 1e-8);

    const auto dead = correlation_report(ideal(r, 1.0));
    EXPECT_NEAR(dead.delta_b, dead.d_b, 1e-9);

    EXPECT_LT(correlation_report(ideal(r, 0.05)).delta_b, 0.0);
    EXPECT_GT(correlation_report(ideal(r, 0.6)).delta_b, 0.0);

    const auto mid = correlation_report(ideal(r, 0.3));
    EXPECT_NEAR(mid.delta(Flavor::AB), 0.5 * (mid.d_a + mid.d_b) - mid.e_f, 1e-15);
    EXPECT_EQ(mid.delta(Flavor::A), mid.delta_a);
    EXPECT_NEAR(mid.d_a, discord(ideal(r, 0.3), Party::B), 1e-15);
    EXPECT_NEAR(mid.i_ab, mutual_information(ideal(r, 0.3)), 1e-15);
}

TEST(Report, RejectsUnphysical) {
    EXPECT_THROW(correlation_report(Covariance(Covariance::Matrix::Identity(4, 4) / 8.0)), Error);
    EXPECT_EQ(parse_flavor("ab"), Flavor::AB);
    EXPECT_THROW(parse_flavor("C"), Error);
}

}  // namespace
}  // namespace cvcorr
