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

// Sweeps over (S, n) and feature extraction: sudden death, crossover points
// and their large-S asymptote.

#ifndef CVCORR_ANALYSIS_HPP
#define CVCORR_ANALYSIS_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cvcorr/correlations.hpp"
#include "cvcorr/interpolation.hpp"
#include "cvcorr/state_factory.hpp"

namespace cvcorr {

struct SweepCell {
    std::optional<CorrelationReport> report;
    std::string error;

    bool ok() const { return report.has_value(); }
};

struct SweepGrid {
    std::vector<double> s_values;
    std::vector<double> n_values;
    /// Row-major, S outer.
    std::vector<SweepCell> cells;

    const SweepCell &at(std::size_t si, std::size_t ni) const { return cells[si * n_values.size() + ni]; }
    std::size_t failures() const;
};

/// Axes must be non-empty and strictly increasing (DomainError). threads <= 0
/// picks one. The result does not depend on the thread count.
SweepGrid sweep(const ModelSpec &model, std::span<const double> s_values, std::span<const double> n_values,
                int threads = 1);

/// 41 points log-spaced on [1e-3, 4].
std::vector<double> default_scan_grid();

struct CrossoverResult {
    Flavor flavor = Flavor::AB;
    double s_db = 0;
    double n_c = 0;
    std::pair<double, double> bracket{};
};

/// Theory mode: root of the interpolated E_F(n) on the scan grid, polished by
/// bisection on the exact model. NoSignChange if E_F has no root up to n = 4.
double sudden_death_point(const ModelSpec &model, double s_db);

/// Theory mode root of Delta_flavor(n) on (0, 1). The returned n_c satisfies
/// |Delta(n_c)| < 1e-8 on the exact model.
CrossoverResult crossover_point(const ModelSpec &model, double s_db, Flavor flavor);

/// Data mode: interpolant roots only, no polishing.
double sudden_death_from_data(std::span<const double> n, std::span<const double> e_f);
std::pair<double, std::pair<double, double>> crossover_from_data(std::span<const double> n,
                                                                 std::span<const double> delta);

/// crossover_point at s_db_large >= 20 dB (DomainError otherwise).
CrossoverResult asymptote_estimate(const ModelSpec &model, Flavor flavor, double s_db_large);

/// Quantity minimized over S: one flavor's crossover, or the mean of the
/// A and B crossovers.
enum class CrossoverTarget { A, B, AB, MeanAB };

std::string to_string(CrossoverTarget target);
CrossoverTarget parse_crossover_target(const std::string &name);

double crossover_for_target(const ModelSpec &model, double s_db, CrossoverTarget target);

struct CrossoverMinimum {
    CrossoverTarget target = CrossoverTarget::AB;
    double s_db = 0;
    double n_c = 0;
};

/// Coarse scan over [s_lo, s_hi] followed by golden-section refinement.
CrossoverMinimum minimize_crossover(const ModelSpec &model, CrossoverTarget target, double s_lo = 2.0,
                                    double s_hi = 12.0, double tolerance_db = 1e-4);

}  // namespace cvcorr

#endif  // CVCORR_ANALYSIS_HPP
