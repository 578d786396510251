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

#include "cvcorr/fit.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "cvcorr/correlations.hpp"
#include "cvcorr/errors.hpp"

namespace cvcorr {

namespace {

struct Vertex {
    double x[2];
    double f;
};

ModelSpec realistic(const JpaNoiseModel &chi, double beta) {
    ModelSpec m;
    m.kind = ModelKind::Realistic;
    m.coupling_beta = beta;
    m.jpa = chi;
    return m;
}

}  // namespace

double cost(std::span<const MeasurementRecord> records, const JpaNoiseModel &chi, const FitWeights &weights,
            double coupling_beta) {
    if (records.empty()) throw Error(ErrorCode::DomainError, "no records to fit");
    const ModelSpec model = realistic(chi, coupling_beta);
    double total = 0.0;
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto &rec = records[k];
        CorrelationReport r;
        try {
            r = correlation_report(model.state(rec.s_db, rec.n));
        } catch (const Error &e) {
            throw Error(ErrorCode::ModelFailure, "record " + std::to_string(k) + ": " + e.what());
        }
        const double da = r.d_a - rec.d_a;
        const double db = r.d_b - rec.d_b;
        const double df = r.e_f - rec.e_f;
        total += weights.w_a * da * da + weights.w_b * db * db + weights.w_f * df * df;
    }
    return total;
}

FitResult fit(std::span<const MeasurementRecord> records, const FitOptions &options) {
    FitResult result;
    std::vector<MeasurementRecord> used;
    std::size_t dropped = 0;
    for (const auto &rec : records) {
        if (!(rec.n >= 0.0) || !(rec.s_db >= 0.0)) throw Error(ErrorCode::DomainError, "record with negative S or n");
        if (rec.s_db == 0.0) {
            ++dropped;
            continue;
        }
        used.push_back(rec);
    }
    if (dropped > 0) {
        result.warnings.push_back("excluded " + std::to_string(dropped) +
                                  " record(s) at S = 0 dB (noise law has infinite slope at G = 1)");
    }
    std::set<double> distinct;
    for (const auto &rec : used) distinct.insert(rec.s_db);
    if (distinct.size() < 2) throw Error(ErrorCode::DomainError, "fit needs records at two or more distinct S values");
    result.records_used = used.size();

    auto evaluate = [&](double *x) {
        if (x[0] < 0.0) {
            x[0] = 0.0;
            ++result.clamp_activations;
        }
        return cost(used, JpaNoiseModel{x[0], x[1]}, options.weights, options.coupling_beta);
    };

    const double x0 = options.initial.chi1;
    const double y0 = options.initial.chi2;
    std::array<Vertex, 3> simplex{{{{x0, y0}, 0.0}, {{x0 + 0.1, y0}, 0.0}, {{x0, y0 + 0.1}, 0.0}}};
    for (auto &v : simplex) v.f = evaluate(v.x);
    result.initial_cost = simplex[0].f;

    auto order = [&]() { std::stable_sort(simplex.begin(), simplex.end(), [](auto &a, auto &b) { return a.f < b.f; }); };
    auto diameter = [&]() {
        double d = 0.0;
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                d = std::max(d, std::hypot(simplex[i].x[0] - simplex[j].x[0], simplex[i].x[1] - simplex[j].x[1]));
            }
        }
        return d;
    };

    order();
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        if (diameter() < options.simplex_tolerance && simplex[2].f - simplex[0].f < options.cost_tolerance) {
            result.converged = true;
            break;
        }
        const double c[2] = {0.5 * (simplex[0].x[0] + simplex[1].x[0]), 0.5 * (simplex[0].x[1] + simplex[1].x[1])};
        auto point = [&](double t) {
            Vertex v{{c[0] + t * (simplex[2].x[0] - c[0]), c[1] + t * (simplex[2].x[1] - c[1])}, 0.0};
            v.f = evaluate(v.x);
            return v;
        };
        const Vertex reflected = point(-1.0);
        if (reflected.f < simplex[0].f) {
            const Vertex expanded = point(-2.0);
            simplex[2] = expanded.f < reflected.f ? expanded : reflected;
        } else if (reflected.f < simplex[1].f) {
            simplex[2] = reflected;
        } else {
            const bool outside = reflected.f < simplex[2].f;
            const Vertex contracted = point(outside ? -0.5 : 0.5);
            if (contracted.f < (outside ? reflected.f : simplex[2].f)) {
                simplex[2] = contracted;
            } else {
                for (int k = 1; k < 3; ++k) {
                    simplex[k].x[0] = simplex[0].x[0] + 0.5 * (simplex[k].x[0] - simplex[0].x[0]);
                    simplex[k].x[1] = simplex[0].x[1] + 0.5 * (simplex[k].x[1] - simplex[0].x[1]);
                    simplex[k].f = evaluate(simplex[k].x);
                }
            }
        }
        order();
    }
    result.iterations = iter;
    result.chi1 = simplex[0].x[0];
    result.chi2 = simplex[0].x[1];
    result.final_cost = simplex[0].f;
    if (!result.converged) result.warnings.push_back("iteration limit reached, best vertex returned");
    return result;
}

std::vector<MeasurementRecord> synthetic_records(const JpaNoiseModel &chi, std::span<const double> s_values,
                                                 std::span<const double> n_values, double amplitude,
                                                 std::uint64_t seed, double coupling_beta) {
    if (!(amplitude >= 0.0)) throw Error(ErrorCode::DomainError, "perturbation amplitude must be >= 0");
    const ModelSpec model = realistic(chi, coupling_beta);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<MeasurementRecord> out;
    out.reserve(s_values.size() * n_values.size());
    for (double s : s_values) {
        for (double n : n_values) {
            const auto r = correlation_report(model.state(s, n));
            MeasurementRecord rec;
            rec.s_db = s;
            rec.n = n;
            rec.d_a = r.d_a;
            rec.d_b = r.d_b;
            rec.e_f = r.e_f;
            if (amplitude > 0.0) {
                rec.d_a += amplitude * noise(rng);
                rec.d_b += amplitude * noise(rng);
                rec.e_f += amplitude * noise(rng);
                rec.std_errors = std::array<double, 3>{amplitude, amplitude, amplitude};
            }
            out.push_back(rec);
        }
    }
    return out;
}

std::vector<double> default_synthetic_s() { return {2.0, 4.0, 6.0, 8.0, 10.0}; }

std::vector<double> default_synthetic_n() { return {0.0, 0.02, 0.05, 0.1, 0.15, 0.2, 0.3, 0.45, 0.6, 0.8}; }

}  // namespace cvcorr
