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

// Covariance reconstruction and cumulant-based Gaussianity check from
// quadrature samples. Columns I1, Q1, I2, Q2 map to q1, p1, q2, p2.

#ifndef CVCORR_TOMOGRAPHY_HPP
#define CVCORR_TOMOGRAPHY_HPP

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "cvcorr/symplectic.hpp"

namespace cvcorr {

using SampleMatrix = Eigen::Matrix<double, Eigen::Dynamic, 4>;

class QuadratureSamples {
   public:
    /// NonFinite on any non-finite entry.
    explicit QuadratureSamples(SampleMatrix data);

    Eigen::Index size() const { return data_.rows(); }
    const SampleMatrix &data() const { return data_; }

   private:
    SampleMatrix data_;
};

/// Streaming mean and co-moment accumulator; merge() combines partial
/// results from disjoint chunks.
class MomentAccumulator {
   public:
    void add(const Eigen::Vector4d &x);
    void add(const QuadratureSamples &s);
    void merge(const MomentAccumulator &other);

    std::int64_t count() const { return count_; }
    const Eigen::Vector4d &mean() const { return mean_; }
    /// Unbiased (N - 1) covariance. TooFewSamples if N < 2.
    Eigen::Matrix4d covariance() const;

   private:
    std::int64_t count_ = 0;
    Eigen::Vector4d mean_ = Eigen::Vector4d::Zero();
    Eigen::Matrix4d comoment_ = Eigen::Matrix4d::Zero();
};

/// Symmetrized unbiased sample covariance in quadrature order.
Covariance covariance_from_samples(const QuadratureSamples &s);

/// Adds isotropic noise delta * 1 with delta = 1/4 - nu_min when the
/// estimate violates nu >= 1/4 (sampling scatter around a pure state).
/// Physical input is returned unchanged.
Covariance physical_projection(const Covariance &v);

struct CumulantEntry {
    /// Order on each of I1, Q1, I2, Q2.
    std::array<int, 4> orders{};
    double value = 0;
    /// Asymptotic standard error of the k-statistic for Gaussian data.
    double std_error = 0;
    /// value divided by the matching powers of the marginal variances.
    double normalized = 0;
    double z = 0;

    int total_order() const { return orders[0] + orders[1] + orders[2] + orders[3]; }
};

struct CumulantReport {
    std::int64_t samples = 0;
    int max_order = 4;
    std::vector<CumulantEntry> entries;
    double threshold = 5.0;
    bool gaussian = true;
    double max_abs_z = 0;
};

/// k-statistics of every mixed order 2..max_order supported on at most two
/// of the four variables. gaussian is true iff every entry of order >= 3 has
/// |z| < threshold. TooFewSamples if N < 10 max_order.
CumulantReport cumulants(const QuadratureSamples &s, int max_order = 4, double threshold = 5.0);

QuadratureSamples gaussian_samples(const Covariance &v, Eigen::Index n, std::uint64_t seed);
/// Independent uniform columns with variance `variance` each.
QuadratureSamples uniform_samples(Eigen::Index n, std::uint64_t seed, double variance = 0.25);

}  // namespace cvcorr

#endif  // CVCORR_TOMOGRAPHY_HPP
