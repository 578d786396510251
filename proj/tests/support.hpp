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

// Random states and small oracles shared by the test suites.

#ifndef CVCORR_TESTS_SUPPORT_HPP
#define CVCORR_TESTS_SUPPORT_HPP

#include <cmath>
#include <random>

#include "cvcorr/state_factory.hpp"
#include "cvcorr/symplectic.hpp"

namespace cvcorr::testing {

inline double max_abs_diff(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b) { return (a - b).cwiseAbs().maxCoeff(); }

using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

// Closed-form cloner output, block by block, in long double.
inline MatrixL analytic_cloner(long double r, long double w, long double beta) {
    const long double ch = std::cosh(2 * r);
    const long double sh = std::sinh(2 * r);
    const long double t = std::sqrt(1 - beta);
    const long double k = std::sqrt(beta);
    const long double e = std::sqrt(w * w - 1);
    const Eigen::Matrix<long double, 2, 2> one = Eigen::Matrix<long double, 2, 2>::Identity();
    Eigen::Matrix<long double, 2, 2> z = one;
    z(1, 1) = -1;

    MatrixL v = MatrixL::Zero(8, 8);
    auto put = [&](int i, int j, const Eigen::Matrix<long double, 2, 2> &b) {
        v.block<2, 2>(2 * i, 2 * j) = b / 4;
        if (i != j) v.block<2, 2>(2 * j, 2 * i) = b.transpose() / 4;
    };
    put(0, 0, ch * one);
    put(0, 1, t * sh * z);
    put(0, 2, -k * sh * z);
    put(0, 3, 0 * one);
    put(1, 1, ((1 - beta) * ch + beta * w) * one);
    put(1, 2, k * t * (w - ch) * one);
    put(1, 3, k * e * z);
    put(2, 2, (beta * ch + (1 - beta) * w) * one);
    put(2, 3, t * e * z);
    put(3, 3, w * one);
    return v;
}

/// Random single-mode symplectic: rotation * squeeze * rotation.
inline Eigen::Matrix2d random_local_symplectic(std::mt19937_64 &rng, double max_squeeze = 1.0) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> sq(-max_squeeze, max_squeeze);
    auto rot = [](double t) {
        Eigen::Matrix2d r;
        r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
        return r;
    };
    const double s = sq(rng);
    return rot(angle(rng)) * Eigen::Vector2d(std::exp(-s), std::exp(s)).asDiagonal() * rot(angle(rng));
}

/// Random physical two-mode state: thermal spectrum dressed by random local
/// symplectics, a two-mode squeezer and a beam splitter.
inline Covariance random_two_mode_state(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> nu(0.25, 2.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> sq(0.0, 1.5);
    Covariance::Matrix d = Covariance::Matrix::Zero(4, 4);
    const double n1 = unit(rng) < 0.2 ? 0.25 : nu(rng);
    const double n2 = unit(rng) < 0.2 ? 0.25 : nu(rng);
    d.diagonal() << n1, n1, n2, n2;
    using Op = SymplecticOperation<double>;
    const auto ops = Op::compose(
        Op::compose(Op::local(2, 0, random_local_symplectic(rng)), Op::local(2, 1, random_local_symplectic(rng))),
        Op::compose(Op::beam_splitter(2, 0, 1, unit(rng)), Op::two_mode_squeezer(2, 0, 1, sq(rng))));
    return apply_symplectic(Covariance(std::move(d)), ops);
}

/// Random state from the factory models.
inline Covariance random_factory_state(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> s_db(0.0, 20.0);
    std::uniform_real_distribution<double> noise(0.0, 5.0);
    std::uniform_real_distribution<double> beta(1e-4, 0.5);
    std::uniform_real_distribution<double> chi1(0.0, 0.2);
    std::uniform_real_distribution<double> chi2(0.2, 1.5);
    std::uniform_int_distribution<int> kind(0, 2);
    ModelSpec m;
    m.kind = static_cast<ModelKind>(kind(rng));
    m.coupling_beta = beta(rng);
    m.jpa = {chi1(rng), chi2(rng)};
    return m.state(s_db(rng), noise(rng));
}

}  // namespace cvcorr::testing

#endif  // CVCORR_TESTS_SUPPORT_HPP
