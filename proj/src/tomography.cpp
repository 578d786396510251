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

#include "cvcorr/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "cvcorr/errors.hpp"

namespace cvcorr {

namespace {

// Flattened variable list of a multi-index, e.g. (2,0,1,0) -> {0,0,2}.
std::vector<int> variables(const std::array<int, 4> &orders) {
    std::vector<int> vars;
    for (int k = 0; k < 4; ++k) {
        for (int m = 0; m < orders[k]; ++m) vars.push_back(k);
    }
    return vars;
}

double permanent(const Eigen::MatrixXd &m) {
    std::vector<int> perm(static_cast<std::size_t>(m.rows()));
    std::iota(perm.begin(), perm.end(), 0);
    double total = 0.0;
    do {
        double prod = 1.0;
        for (std::size_t i = 0; i < perm.size(); ++i) prod *= m(static_cast<Eigen::Index>(i), perm[i]);
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

std::vector<std::array<int, 4>> multi_indices(int max_order) {
    std::vector<std::array<int, 4>> out;
    for (int order = 2; order <= max_order; ++order) {
        for (int i = 0; i < 4; ++i) {
            std::array<int, 4> pure{};
            pure[i] = order;
            out.push_back(pure);
        }
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                for (int m = order - 1; m >= 1; --m) {
                    std::array<int, 4> mixed{};
                    mixed[i] = m;
                    mixed[j] = order - m;
                    out.push_back(mixed);
                }
            }
        }
    }
    return out;
}

}  // namespace

QuadratureSamples::QuadratureSamples(SampleMatrix data) : data_(std::move(data)) {
    if (!data_.allFinite()) throw Error(ErrorCode::NonFinite, "non-finite quadrature sample");
}

void MomentAccumulator::add(const Eigen::Vector4d &x) {
    ++count_;
    const Eigen::Vector4d d = x - mean_;
    mean_ += d / static_cast<double>(count_);
    comoment_ += d * (x - mean_).transpose();
}

void MomentAccumulator::add(const QuadratureSamples &s) {
    for (Eigen::Index k = 0; k < s.size(); ++k) add(s.data().row(k).transpose());
}

void MomentAccumulator::merge(const MomentAccumulator &other) {
    if (other.count_ == 0) return;
    if (count_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(count_);
    const double nb = static_cast<double>(other.count_);
    const double n = na + nb;
    const Eigen::Vector4d d = other.mean_ - mean_;
    comoment_ += other.comoment_ + d * d.transpose() * (na * nb / n);
    mean_ += d * (nb / n);
    count_ += other.count_;
}

Eigen::Matrix4d MomentAccumulator::covariance() const {
    if (count_ < 2) throw Error(ErrorCode::TooFewSamples, "covariance needs at least two samples");
    const Eigen::Matrix4d c = comoment_ / static_cast<double>(count_ - 1);
    return 0.5 * (c + c.transpose());
}

Covariance covariance_from_samples(const QuadratureSamples &s) {
    if (s.size() < 2) throw Error(ErrorCode::TooFewSamples, "covariance needs at least two samples");
    MomentAccumulator acc;
    acc.add(s);
    return Covariance(Covariance::Matrix(acc.covariance()));
}

Covariance physical_projection(const Covariance &v) {
    const auto verdict = validate(v);
    if (verdict.has(Violation::NotPositiveDefinite) || verdict.has(Violation::Asymmetric)) {
        throw Error(ErrorCode::Unphysical, "covariance estimate is not positive definite");
    }
    const double deficit = vacuum_variance<double>() - verdict.min_symplectic_eigenvalue;
    if (deficit <= 0.0) return v;
    Covariance::Matrix m = v.matrix();
    m.diagonal().array() += deficit * (1.0 + 1e-12) + 1e-15;
    return Covariance(std::move(m));
}

CumulantReport cumulants(const QuadratureSamples &s, int max_order, double threshold) {
    if (max_order < 2 || max_order > 4) throw Error(ErrorCode::DomainError, "max_order must be 2, 3 or 4");
    if (!(threshold > 0.0)) throw Error(ErrorCode::DomainError, "threshold must be positive");
    const Eigen::Index count = s.size();
    if (count < 10 * max_order || count < 4) {
        throw Error(ErrorCode::TooFewSamples, "cumulants up to order " + std::to_string(max_order) + " need at least " +
                                                  std::to_string(10 * max_order) + " samples");
    }
    const double n = static_cast<double>(count);
    const SampleMatrix centered = s.data().rowwise() - s.data().colwise().mean();
    const Eigen::Matrix4d m2 = centered.transpose() * centered / n;
    const Eigen::Matrix4d sigma = m2 * n / (n - 1.0);

    auto central = [&](const std::vector<int> &vars) {
        Eigen::VectorXd prod = Eigen::VectorXd::Ones(count);
        for (int v : vars) prod = prod.cwiseProduct(centered.col(v));
        return prod.mean();
    };

    CumulantReport report;
    report.samples = count;
    report.max_order = max_order;
    report.threshold = threshold;
    for (const auto &orders : multi_indices(max_order)) {
        const auto vars = variables(orders);
        CumulantEntry e;
        e.orders = orders;
        switch (vars.size()) {
            case 2:
                e.value = n / (n - 1.0) * central(vars);
                break;
            case 3:
                e.value = n * n / ((n - 1.0) * (n - 2.0)) * central(vars);
                break;
            default: {
                const int a = vars[0], b = vars[1], c = vars[2], d = vars[3];
                const double pairs = m2(a, b) * m2(c, d) + m2(a, c) * m2(b, d) + m2(a, d) * m2(b, c);
                e.value = n * n * ((n + 1.0) * central(vars) - (n - 1.0) * pairs) / ((n - 1.0) * (n - 2.0) * (n - 3.0));
                break;
            }
        }
        Eigen::MatrixXd sub(vars.size(), vars.size());
        double scale = 1.0;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            scale *= std::sqrt(sigma(vars[i], vars[i]));
            for (std::size_t j = 0; j < vars.size(); ++j) {
                sub(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sigma(vars[i], vars[j]);
            }
        }
        e.std_error = std::sqrt(std::max(0.0, permanent(sub)) / n);
        e.normalized = scale > 0.0 ? e.value / scale : 0.0;
        e.z = e.std_error > 0.0 ? e.value / e.std_error : (e.value == 0.0 ? 0.0 : HUGE_VAL);
        if (e.total_order() >= 3) {
            report.max_abs_z = std::max(report.max_abs_z, std::abs(e.z));
            if (!(std::abs(e.z) < threshold)) report.gaussian = false;
        }
        report.entries.push_back(e);
    }
    return report;
}

QuadratureSamples gaussian_samples(const Covariance &v, Eigen::Index n, std::uint64_t seed) {
    if (v.modes() != 2) throw Error(ErrorCode::DimensionMismatch, "sample generator expects a two-mode covariance");
    const Eigen::LLT<Eigen::Matrix4d> llt(Eigen::Matrix4d(v.matrix()));
    if (llt.info() != Eigen::Success) throw Error(ErrorCode::Unphysical, "covariance is not positive definite");
    const Eigen::Matrix4d l = llt.matrixL();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    SampleMatrix data(n, 4);
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Vector4d z;
        for (int j = 0; j < 4; ++j) z(j) = normal(rng);
        data.row(k) = (l * z).transpose();
    }
    return QuadratureSamples(std::move(data));
}

QuadratureSamples uniform_samples(Eigen::Index n, std::uint64_t seed, double variance) {
    const double half_width = std::sqrt(3.0 * variance);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-half_width, half_width);
    SampleMatrix data(n, 4);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (int j = 0; j < 4; ++j) data(k, j) = uniform(rng);
    }
    return QuadratureSamples(std::move(data));
}

}  // namespace cvcorr
