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

// Weighted least-squares estimation of the amplifier noise law
// n_j = chi1 (G - 1)^chi2 from measured discord and EoF records.

#ifndef CVCORR_FIT_HPP
#define CVCORR_FIT_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cvcorr/state_factory.hpp"

namespace cvcorr {

struct MeasurementRecord {
    double s_db = 0;
    double n = 0;
    double d_a = 0;
    double d_b = 0;
    double e_f = 0;
    std::optional<std::array<double, 3>> std_errors;
};

struct FitWeights {
    double w_a = 0.5;
    double w_b = 0.5;
    double w_f = 1.0;
};

struct FitOptions {
    FitWeights weights{};
    double coupling_beta = 0.01;
    JpaNoiseModel initial{0.0, 1.0};
    int max_iterations = 2000;
    double simplex_tolerance = 1e-6;
    double cost_tolerance = 1e-12;
};

struct FitResult {
    double chi1 = 0;
    double chi2 = 0;
    double initial_cost = 0;
    double final_cost = 0;
    int iterations = 0;
    bool converged = false;
    /// Times a vertex was projected back onto chi1 >= 0.
    int clamp_activations = 0;
    std::size_t records_used = 0;
    std::vector<std::string> warnings;
};

/// T(chi) summed over records. ModelFailure names the offending record index.
double cost(std::span<const MeasurementRecord> records, const JpaNoiseModel &chi, const FitWeights &weights = {},
            double coupling_beta = 0.01);

/// Nelder-Mead descent from options.initial. Records at S = 0 are dropped
/// with a warning; fewer than two distinct S values left is a DomainError.
FitResult fit(std::span<const MeasurementRecord> records, const FitOptions &options = {});

/// Noise-free model records on the S x n grid, then every observable is
/// perturbed by N(0, amplitude^2) drawn from a seeded generator.
std::vector<MeasurementRecord> synthetic_records(const JpaNoiseModel &chi, std::span<const double> s_values,
                                                 std::span<const double> n_values, double amplitude = 0.0,
                                                 std::uint64_t seed = 0, double coupling_beta = 0.01);

std::vector<double> default_synthetic_s();
std::vector<double> default_synthetic_n();

}  // namespace cvcorr

#endif  // CVCORR_FIT_HPP
