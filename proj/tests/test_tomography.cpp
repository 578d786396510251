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
#include "cvcorr/tomography.hpp"
#include "support.hpp"

namespace cvcorr {
namespace {

const CumulantEntry &entry(const CumulantReport &r, std::array<int, 4> orders) {
    for (const auto &e : r.entries) {
        if (e.orders == orders) return e;
    }
    throw std::runtime_error("missing cumulant entry");
}

TEST(Samples, RejectNonFinite) {
    SampleMatrix m = SampleMatrix::Zero(3, 4);
    m(1, 2) = std::numeric_limits<double>::infinity();
    EXPECT_THROW(QuadratureSamples{m}, Error);
}

TEST(Reconstruction, VacuumWithinStandardErrors) {
    const Eigen::Index n = 1000000;
    const auto v = covariance_from_samples(gaussian_samples(Covariance::vacuum(2), n, 1));
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            // var(x_i x_j) for independent vacuum quadratures
            const double se = (i == j ? std::sqrt(2.0) : 1.0) * 0.25 / std::sqrt(static_cast<double>(n));
            EXPECT_NEAR(v(i, j), i == j ? 0.25 : 0.0, 3 * se) << i << j;
        }
    }
}

TEST(Reconstruction, ConstantSamplesAreUnphysical) {
    const SampleMatrix m = SampleMatrix::Constant(50, 4, 0.7);
    const auto v = covariance_from_samples(QuadratureSamples(m));
    EXPECT_EQ(v.matrix().cwiseAbs().maxCoeff(), 0.0);
    EXPECT_FALSE(validate(v).clean());
    EXPECT_THROW(physical_projection(v), Error);
}

TEST(Reconstruction, TooFewSamples) {
    EXPECT_THROW(covariance_from_samples(QuadratureSamples(SampleMatrix::Zero(1, 4))), Error);
    MomentAccumulator acc;
    EXPECT_THROW(acc.covariance(), Error);
}

TEST(Reconstruction, MergedChunksMatchBatch) {
    const auto s = gaussian_samples(ideal_tms(0.6), 5000, 3);
    MomentAccumulator whole;
    whole.add(s);
    MomentAccumulator left;
    MomentAccumulator right;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        (k < 1234 ? left : right).add(Eigen::Vector4d(s.data().row(k).transpose()));
    }
    left.merge(right);
    EXPECT_EQ(left.count(), whole.count());
    EXPECT_LT((left.covariance() - whole.covariance()).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_LT((left.mean() - whole.mean()).cwiseAbs().maxCoeff(), 1e-14);

    const SampleMatrix centered = s.data().rowwise() - s.data().colwise().mean();
    const Eigen::Matrix4d batch = centered.transpose() * centered / static_cast<double>(s.size() - 1);
    EXPECT_LT((whole.covariance() - batch).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Reconstruction, ProjectionRestoresPhysicality) {
    Covariance::Matrix m = ideal_tms(1.0).matrix();
    m(0, 0) -= 1e-4;
    const Covariance raw(m);
    EXPECT_FALSE(validate(raw).clean());
    const auto fixed = physical_projection(raw);
    EXPECT_TRUE(validate(fixed).clean());
    EXPECT_LT(testing::max_abs_diff(physical_projection(ideal_tms(0.3)).matrix(), ideal_tms(0.3).matrix()), 1e-14);
}

TEST(Reconstruction, TmsReconstruction) {
    const auto samples = gaussian_samples(ideal_tms(1.0), 1000000, 5);
    const auto v = physical_projection(covariance_from_samples(samples));
    const double d_b = correlation_report(v).d_b;
    EXPECT_NEAR(d_b, 1.6198, 0.05 * 1.6198);
}

TEST(Cumulants, MatchUnivariateKStatistics) {
    std::mt19937_64 rng(12);
    std::exponential_distribution<double> skewed(1.0);
    SampleMatrix m(200, 4);
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
        for (int c = 0; c < 4; ++c) m(k, c) = skewed(rng);
    }
    const auto report = cumulants(QuadratureSamples(m));
    const double n = 200.0;
    const Eigen::VectorXd x = m.col(0).array() - m.col(0).mean();
    const double m2 = x.array().square().mean();
    const double m3 = x.array().cube().mean();
    const double m4 = x.array().pow(4).mean();
    const double k2 = n / (n - 1) * m2;
    const double k3 = n * n / ((n - 1) * (n - 2)) * m3;
    const double k4 = n * n * ((n + 1) * m4 - 3 * (n - 1) * m2 * m2) / ((n - 1) * (n - 2) * (n - 3));
    EXPECT_NEAR(entry(report, {2, 0, 0, 0}).value, k2, 1e-12);
    EXPECT_NEAR(entry(report, {3, 0, 0, 0}).value, k3, 1e-12);
    EXPECT_NEAR(entry(report, {4, 0, 0, 0}).value, k4, 1e-11);
    EXPECT_FALSE(report.gaussian);
}

TEST(Cumulants, GaussianDataPasses) {
    const auto report = cumulants(gaussian_samples(ideal_tms(0.8), 20000, 21));
    EXPECT_TRUE(report.gaussian);
    EXPECT_LT(report.max_abs_z, 5.0);
    for (const auto &e : report.entries) {
        if (e.total_order() >= 3) EXPECT_LT(std::abs(e.normalized), 0.15);
    }
    EXPECT_EQ(report.samples, 20000);
}

TEST(Cumulants, UniformDataFails) {
    const auto report = cumulants(uniform_samples(20000, 8));
    EXPECT_FALSE(report.gaussian);
    const auto &k4 = entry(report, {0, 0, 4, 0});
    EXPECT_NEAR(k4.normalized, -1.2, 0.1);
    EXPECT_LT(k4.z, -5.0);
}

TEST(Cumulants, OrderAndThresholdChecks) {
    const auto s = gaussian_samples(Covariance::vacuum(2), 100, 2);
    EXPECT_THROW(cumulants(s, 5), Error);
    EXPECT_THROW(cumulants(s, 4, 0.0), Error);
    EXPECT_THROW(cumulants(gaussian_samples(Covariance::vacuum(2), 30, 2), 4), Error);
    const auto third = cumulants(s, 3);
    for (const auto &e : third.entries) EXPECT_LE(e.total_order(), 3);
}

}  // namespace
}  // namespace cvcorr
