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

#include "cvcorr/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "cvcorr/errors.hpp"

namespace cvcorr {

namespace {

constexpr std::size_t kScanPoints = 41;
constexpr double kScanLow = 1e-3;
constexpr double kScanHigh = 4.0;
constexpr double kGolden = 0.6180339887498949;

void require_axis(std::span<const double> axis, const char *name) {
    if (axis.empty()) throw Error(ErrorCode::DomainError, std::string(name) + " axis is empty");
    for (std::size_t k = 0; k < axis.size(); ++k) {
        if (!std::isfinite(axis[k])) throw Error(ErrorCode::NonFinite, std::string(name) + " axis is not finite");
        if (k > 0 && !(axis[k] > axis[k - 1])) {
            throw Error(ErrorCode::DomainError, std::string(name) + " axis must be strictly increasing");
        }
    }
}

// Bisection on the exact function inside a bracket with a sign change.
double polish(const std::function<double(double)> &f, double lo, double hi) {
    double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0)) throw Error(ErrorCode::NoSignChange, "bracket lost its sign change");
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    const double a = std::abs(f(lo));
    const double b = std::abs(f(hi));
    return a <= b ? lo : hi;
}

std::vector<double> sample(const std::function<double(double)> &f, std::span<const double> xs) {
    std::vector<double> ys;
    ys.reserve(xs.size());
    for (double x : xs) ys.push_back(f(x));
    return ys;
}

}  // namespace

std::size_t SweepGrid::failures() const {
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const SweepCell &c) { return !c.ok(); }));
}

SweepGrid sweep(const ModelSpec &model, std::span<const double> s_values, std::span<const double> n_values,
                int threads) {
    require_axis(s_values, "S");
    require_axis(n_values, "n");
    SweepGrid grid;
    grid.s_values.assign(s_values.begin(), s_values.end());
    grid.n_values.assign(n_values.begin(), n_values.end());
    const std::size_t total = s_values.size() * n_values.size();
    grid.cells.resize(total);

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t idx = next++; idx < total; idx = next++) {
            const double s = grid.s_values[idx / grid.n_values.size()];
            const double n = grid.n_values[idx % grid.n_values.size()];
            SweepCell &cell = grid.cells[idx];
            try {
                cell.report = correlation_report(model.state(s, n));
            } catch (const Error &e) {
                cell.error = std::string(to_string(e.code())) + ": " + e.what();
            }
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(threads > 0 ? static_cast<std::size_t>(threads) : 1, 1, total);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t k = 0; k < workers; ++k) pool.emplace_back(worker);
        for (auto &t : pool) t.join();
    }
    return grid;
}

std::vector<double> default_scan_grid() {
    std::vector<double> grid(kScanPoints);
    const double ratio = std::log(kScanHigh / kScanLow);
    for (std::size_t k = 0; k < kScanPoints; ++k) {
        grid[k] = kScanLow * std::exp(ratio * static_cast<double>(k) / static_cast<double>(kScanPoints - 1));
    }
    grid.front() = kScanLow;
    grid.back() = kScanHigh;
    return grid;
}

double sudden_death_point(const ModelSpec &model, double s_db) {
    auto e_f = [&](double n) { return eof_lower_bound(model.state(s_db, n)); };
    if (!(e_f(0.0) > 0.0)) throw Error(ErrorCode::DomainError, "state is not entangled at n = 0");
    const auto grid = default_scan_grid();
    const MonotoneCubic interp(grid, sample(e_f, grid));
    const auto root = interp.first_root(0.0, kScanHigh);
    if (!root) throw Error(ErrorCode::NoSignChange, "E_F has no root on the scanned noise range");
    return polish(e_f, root->second.first, root->second.second);
}

CrossoverResult crossover_point(const ModelSpec &model, double s_db, Flavor flavor) {
    auto delta = [&](double n) { return correlation_report(model.state(s_db, n)).delta(flavor); };
    auto grid = default_scan_grid();
    grid.erase(std::remove_if(grid.begin(), grid.end(), [](double n) { return n >= 1.0; }), grid.end());
    const MonotoneCubic interp(grid, sample(delta, grid));
    const auto root = interp.first_root(0.0, 1.0);
    if (!root) {
        throw Error(ErrorCode::NoSignChange, "Delta_" + to_string(flavor) + " has no root on (0, 1) at " +
                                                 std::to_string(s_db) + " dB");
    }
    CrossoverResult result;
    result.flavor = flavor;
    result.s_db = s_db;
    result.bracket = root->second;
    result.n_c = polish(delta, root->second.first, root->second.second);
    return result;
}

double sudden_death_from_data(std::span<const double> n, std::span<const double> e_f) {
    const auto interp = hermite_interpolate(n, e_f);
    const auto root = interp.first_root(interp.xs().front(), interp.xs().back());
    if (!root) throw Error(ErrorCode::NoSignChange, "E_F data has no root");
    return root->first;
}

std::pair<double, std::pair<double, double>> crossover_from_data(std::span<const double> n,
                                                                 std::span<const double> delta) {
    const auto interp = hermite_interpolate(n, delta);
    const auto root = interp.first_root(interp.xs().front(), interp.xs().back());
    if (!root) throw Error(ErrorCode::NoSignChange, "Delta data has no root");
    return *root;
}

CrossoverResult asymptote_estimate(const ModelSpec &model, Flavor flavor, double s_db_large) {
    if (!(s_db_large >= 20.0)) throw Error(ErrorCode::DomainError, "asymptote estimate needs S >= 20 dB");
    return crossover_point(model, s_db_large, flavor);
}

std::string to_string(CrossoverTarget target) {
    switch (target) {
        case CrossoverTarget::A: return "A";
        case CrossoverTarget::B: return "B";
        case CrossoverTarget::AB: return "AB";
        case CrossoverTarget::MeanAB: return "mean";
    }
    return "?";
}

CrossoverTarget parse_crossover_target(const std::string &name) {
    if (name == "mean") return CrossoverTarget::MeanAB;
    switch (parse_flavor(name)) {
        case Flavor::A: return CrossoverTarget::A;
        case Flavor::B: return CrossoverTarget::B;
        case Flavor::AB: return CrossoverTarget::AB;
    }
    return CrossoverTarget::AB;
}

double crossover_for_target(const ModelSpec &model, double s_db, CrossoverTarget target) {
    switch (target) {
        case CrossoverTarget::A: return crossover_point(model, s_db, Flavor::A).n_c;
        case CrossoverTarget::B: return crossover_point(model, s_db, Flavor::B).n_c;
        case CrossoverTarget::AB: return crossover_point(model, s_db, Flavor::AB).n_c;
        case CrossoverTarget::MeanAB:
            return 0.5 * (crossover_point(model, s_db, Flavor::A).n_c + crossover_point(model, s_db, Flavor::B).n_c);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

CrossoverMinimum minimize_crossover(const ModelSpec &model, CrossoverTarget target, double s_lo, double s_hi,
                                    double tolerance_db) {
    if (!(s_hi > s_lo) || !(s_lo > 0.0)) throw Error(ErrorCode::DomainError, "bad squeezing interval");
    auto f = [&](double s) { return crossover_for_target(model, s, target); };

    constexpr int kCoarse = 20;
    const double step = (s_hi - s_lo) / kCoarse;
    int best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= kCoarse; ++k) {
        const double value = f(s_lo + step * k);
        if (value < best_value) {
            best_value = value;
            best = k;
        }
    }

    double a = s_lo + step * std::max(0, best - 1);
    double b = s_lo + step * std::min(kCoarse, best + 1);
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tolerance_db) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = f(x2);
        }
    }
    CrossoverMinimum m;
    m.target = target;
    m.s_db = 0.5 * (a + b);
    m.n_c = f(m.s_db);
    if (best_value < m.n_c) {
        m.s_db = s_lo + step * best;
        m.n_c = best_value;
    }
    return m;
}

}  // namespace cvcorr
