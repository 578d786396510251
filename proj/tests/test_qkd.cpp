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

#include "cvcorr/errors.hpp"
#include "cvcorr/qkd.hpp"
#include "cvcorr/state_factory.hpp"
#include "support.hpp"

namespace cvcorr {
namespace {

using LD = long double;
using MatrixL = testing::MatrixL;
using testing::analytic_cloner;

MatrixL principal(const MatrixL &v, std::initializer_list<int> modes) {
    MatrixL out(2 * modes.size(), 2 * modes.size());
    int i = 0;
    for (int a : modes) {
        int j = 0;
        for (int b : modes) {
            out.block<2, 2>(2 * i, 2 * j) = v.block<2, 2>(2 * a, 2 * b);
            ++j;
        }
        ++i;
    }
    return out;
}

// Symplectic eigenvalues from |eig(Omega V)| with the general eigensolver.
LD naive_entropy(const MatrixL &v) {
    const int n = static_cast<int>(v.rows() / 2);
    MatrixL omega = MatrixL::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        omega(2 * k, 2 * k + 1) = 1;
        omega(2 * k + 1, 2 * k) = -1;
    }
    Eigen::EigenSolver<MatrixL> es(omega * v, false);
    LD s = 0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const LD nu = std::max<LD>(std::abs(es.eigenvalues()(k)), 0.25L);
        const LD up = 2 * nu + 0.5L;
        const LD down = 2 * nu - 0.5L;
        s += 0.5L * (up * std::log(up) - (down > 0 ? down * std::log(down) : 0));
    }
    return s;
}

// Eve's reduced state conditioned on Bob's q outcome, explicit Schur complement.
MatrixL naive_condition_on_b(const MatrixL &v) {
    const MatrixL eve = principal(v, {2, 3});
    MatrixL cross(4, 1);
    cross << v(4, 2), v(5, 2), v(6, 2), v(7, 2);
    return eve - cross * cross.transpose() / v(2, 2);
}

LD naive_holevo_bits(LD r, LD w, LD beta) {
    const MatrixL v = analytic_cloner(r, w, beta);
    const LD chi = naive_entropy(principal(v, {2, 3})) - naive_entropy(naive_condition_on_b(v));
    return chi / std::log(2.0L);
}

TEST(Cloner, MatchesClosedFormBlocks) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> r_dist(0.0, 2.5);
    std::uniform_real_distribution<double> nq_dist(0.0, 1.0);
    std::uniform_real_distribution<double> log_beta(-5.0, -0.5);
    for (int k = 0; k < 50; ++k) {
        const QkdScenario sc(r_dist(rng), nq_dist(rng), std::pow(10.0, log_beta(rng)));
        const MatrixL closed = analytic_cloner(sc.r(), sc.cloner_w(), sc.beta());
        const MatrixL composed = cloner_state(sc).matrix().cast<LD>();
        const LD scale = std::max<LD>(1, closed.cwiseAbs().maxCoeff());
        EXPECT_LT(static_cast<double>((closed - composed).cwiseAbs().maxCoeff() / scale), 1e-12) << k;
    }
}

TEST(Cloner, Examples) {
    const auto v = cloner_state(QkdScenario(1.0, 0.25, 1e-4));
    EXPECT_NEAR(v(2, 2), 1.190455, 1e-6);
    EXPECT_NEAR(v(3, 3), 1.190455, 1e-6);
    EXPECT_TRUE(validate(v).clean());
    EXPECT_NEAR(symplectic_eigenvalues(v).maxCoeff(), 0.25, 1e-6);

    const double beta = 0.3;
    const double r = 0.8;
    const auto vac = cloner_state(QkdScenario(r, 0.0, beta));
    EXPECT_NEAR(vac(2, 2), ((1 - beta) * std::cosh(2 * r) + beta) / 4, 1e-14);
    EXPECT_LT(testing::max_abs_diff(partial_trace(vac, {3}).matrix(), Covariance::vacuum(1).matrix()), 1e-15);

    const auto weak = cloner_state(QkdScenario(r, 0.0, 1e-14));
    EXPECT_LT(testing::max_abs_diff(weak.matrix(), tensor(ideal_tms(r), Covariance::vacuum(2)).matrix()), 1e-7);
}

TEST(Cloner, WClamp) {
    EXPECT_EQ(QkdScenario(1.0, 0.0).cloner_w(), 1.0);
    EXPECT_EQ(QkdScenario(1.0, 1e-6).cloner_w(), 1.0);
    EXPECT_NEAR(QkdScenario(1.0, 0.25).cloner_w(), 1e4, 1e-8);
    EXPECT_THROW(QkdScenario(1.0, 0.25, 0.0), Error);
    EXPECT_THROW(QkdScenario(-1.0, 0.25), Error);
    EXPECT_THROW(eve_tms(0.5), Error);
}

TEST(Homodyne, EveConditionalMatchesDenseOracle) {
    const QkdScenario sc(1.0, 0.25, 1e-4);
    const auto full = cloner_state(sc);
    const auto bob_eve = partial_trace(full, {1, 2, 3});
    const auto conditioned = homodyne_condition(bob_eve, 0, Quadrature::Q);
    const MatrixL oracle = naive_condition_on_b(analytic_cloner(1.0L, sc.cloner_w(), 1e-4L));
    const LD scale = oracle.cwiseAbs().maxCoeff();
    EXPECT_LT(static_cast<double>((conditioned.matrix().cast<LD>() - oracle).cwiseAbs().maxCoeff() / scale), 1e-10);
}

TEST(Holevo, VacuumClonerLeaksNothing) {
    for (double r : {0.3, 0.6, 1.0}) EXPECT_LT(holevo_quantity(QkdScenario(r, 0.0, 1e-4)), 1e-3) << r;
    // beta * cosh 2r sets the leak; strong squeezing needs weaker coupling
    EXPECT_GT(holevo_quantity(QkdScenario(2.0, 0.0, 1e-4)), 1e-3);
    EXPECT_LT(holevo_quantity(QkdScenario(2.0, 0.0, 1e-6)), 1e-3);
}

TEST(Holevo, MatchesDenseOracle) {
    const QkdScenario sc(1.15, 0.25, 1e-4);
    const double oracle = static_cast<double>(naive_holevo_bits(1.15L, sc.cloner_w(), 1e-4L));
    EXPECT_NEAR(holevo_quantity(sc), oracle, 1e-8);
}

TEST(Holevo, RoutesAgreeAtModerateCoupling) {
    for (double beta : {0.05, 0.2, 0.5}) {
        for (double nq : {0.01, 0.1, 0.4}) {
            const QkdScenario sc(0.9, nq, beta);
            EXPECT_NEAR(holevo_quantity(sc), holevo_quantity_eve(sc), 1e-9) << beta << " " << nq;
        }
    }
}

TEST(Shannon, Examples) {
    EXPECT_EQ(shannon_mi(QkdScenario(1.0, 0.25, 1e-4, 0.0)), 0.0);
    const QkdScenario ten = QkdScenario::from_db(10.0, 0.25);
    EXPECT_NEAR(ten.sigma2(), 2.475, 1e-3);
    EXPECT_NEAR(shannon_mi(ten), 1.66090, 1e-5);
    EXPECT_NEAR(shannon_mi(ten), 0.5 * std::log2(9.99918), 1e-5);
    EXPECT_LT(shannon_mi(QkdScenario(1.0, 1e12)), 1e-9);
}

TEST(Shannon, AsymptoticForm) {
    const double nq = 0.3;
    const QkdScenario sc(10.0, nq, 1e-9);
    EXPECT_NEAR(shannon_mi(sc), 0.5 * std::log2(1 + sc.sigma2() / nq), 1e-6);
}

TEST(Key, Signs) {
    EXPECT_TRUE(secret_key(QkdScenario::from_db(10.0, 1e-6)).secure());
    for (double s : {1.0, 5.0, 10.0, 30.0}) EXPECT_LT(secret_key(QkdScenario::from_db(s, 1.0)).key, 0.0) << s;
}

TEST(Key, MonotoneInNoise) {
    double prev = std::numeric_limits<double>::infinity();
    for (double nq = 1e-4; nq < 2.0; nq *= 1.2) {
        const double k = secret_key(QkdScenario::from_db(10.0, nq)).key;
        EXPECT_LT(k, prev) << nq;
        prev = k;
    }
}

TEST(Threshold, Examples) {
    const double t30 = key_threshold(30.0);
    EXPECT_NEAR(t30, 0.26, 0.01);
    const auto at = secret_key(QkdScenario::from_db(30.0, t30));
    EXPECT_LT(std::abs(at.key), 1e-10);
    EXPECT_NEAR(at.holevo, at.shannon_mi, 1e-10);
}

TEST(Threshold, WeakSqueezingMatchesScan) {
    const double t = key_threshold(0.5);
    double bracket_lo = 0;
    double bracket_hi = 0;
    double prev_nq = 1e-4;
    for (double nq = 1e-4; nq < 1.0; nq += 1e-4) {
        if (secret_key(QkdScenario::from_db(0.5, nq)).key < 0) {
            bracket_lo = prev_nq;
            bracket_hi = nq;
            break;
        }
        prev_nq = nq;
    }
    EXPECT_GE(t, bracket_lo);
    EXPECT_LE(t, bracket_hi);
    EXPECT_LT(t, 0.05);
}

TEST(Threshold, IncreasesWithSqueezing) {
    double prev = 0;
    for (double s : {0.5, 3.0, 10.0, 20.0, 30.0, 40.0}) {
        const double t = key_threshold(s);
        EXPECT_GT(t, prev) << s;
        EXPECT_LT(t, 0.27) << s;
        prev = t;
    }
    EXPECT_THROW(key_threshold(0.0), Error);
}

}  // namespace
}  // namespace cvcorr
