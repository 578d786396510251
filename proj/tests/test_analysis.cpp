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

#include "cvcorr/analysis.hpp"
#include "cvcorr/errors.hpp"

namespace cvcorr {
namespace {

ModelSpec ideal_model() { return ModelSpec{}; }

TEST(Sweep, PureColumnHasNoDeltas) {
    const std::vector<double> s{7.0};
    const std::vector<double> n{0.0};
    const auto grid = sweep(ideal_model(), s, n);
    ASSERT_TRUE(grid.at(0, 0).ok());
    const auto &r = *grid.at(0, 0).report;
    EXPECT_NEAR(r.delta_a, 0.0, 1e-8);
    EXPECT_NEAR(r.delta_b, 0.0, 1e-8);
    EXPECT_NEAR(r.delta_ab, 0.0, 1e-8);
}

TEST(Sweep, SuddenDeathRowAndPositiveDiscord) {
    std::vector<double> s;
    for (double x = 1.0; x <= 10.0; x += 1.0) s.push_back(x);
    std::vector<double> n;
    for (int k = 0; k <= 20; ++k) n.push_back(0.1 * k);
    const auto grid = sweep(ideal_model(), s, n, 3);
    EXPECT_EQ(grid.failures(), 0u);
    for (std::size_t si = 0; si < s.size(); ++si) {
        EXPECT_NEAR(grid.at(si, 10).report->e_f, 0.0, 1e-9);
        for (std::size_t ni = 0; ni < n.size(); ++ni) EXPECT_GT(grid.at(si, ni).report->d_b, 0.0);
    }
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
    const std::vector<double> s{2.0, 5.0, 9.0};
    const std::vector<double> n{0.0, 0.3, 0.9, 2.0};
    const auto one = sweep(ideal_model(), s, n, 1);
    const auto four = sweep(ideal_model(), s, n, 4);
    for (std::size_t k = 0; k < one.cells.size(); ++k) {
        EXPECT_EQ(one.cells[k].report->d_a, four.cells[k].report->d_a);
        EXPECT_EQ(one.cells[k].report->e_f, four.cells[k].report->e_f);
    }
}

TEST(Sweep, BadAxes) {
    const std::vector<double> empty;
    const std::vector<double> one{1.0};
    const std::vector<double> unsorted{1.0, 0.5};
    EXPECT_THROW(sweep(ideal_model(), empty, one), Error);
    EXPECT_THROW(sweep(ideal_model(), one, unsorted), Error);
}

TEST(Sweep, CellFailuresAreRecorded) {
    const std::vector<double> s{-1.0, 3.0};
    const std::vector<double> n{0.1};
    const auto grid = sweep(ideal_model(), s, n);
    EXPECT_EQ(grid.failures(), 1u);
    EXPECT_FALSE(grid.at(0, 0).ok());
    EXPECT_FALSE(grid.at(0, 0).error.empty());
    EXPECT_TRUE(grid.at(1, 0).ok());
}

TEST(Features, SuddenDeathIsUnity) {
    for (double s : {3.0, 6.0, 10.0}) EXPECT_NEAR(sudden_death_point(ideal_model(), s), 1.0, 1e-6) << s;
}

TEST(Features, RealisticSuddenDeathComesEarlier) {
    ModelSpec m;
    m.kind = ModelKind::Realistic;
    m.jpa = {0.05, 0.56};
    EXPECT_LT(sudden_death_point(m, 6.5), 1.0);
    EXPECT_THROW(sudden_death_point(ideal_model(), 0.0), Error);
}

TEST(Features, CrossoverRootsAreRoots) {
    for (auto flavor : {Flavor::A, Flavor::B, Flavor::AB}) {
        const auto c = crossover_point(ideal_model(), 6.0, flavor);
        EXPECT_GT(c.n_c, c.bracket.first - 1e-15);
        EXPECT_LT(c.n_c, c.bracket.second + 1e-15);
        const auto rep = correlation_report(ideal_model().state(6.0, c.n_c));
        EXPECT_NEAR(rep.delta(flavor), 0.0, 1e-10);
    }
}

TEST(Features, AsymptoteNearQuarter) {
    for (auto flavor : {Flavor::A, Flavor::B}) {
        EXPECT_NEAR(asymptote_estimate(ideal_model(), flavor, 30.0).n_c, 0.26, 0.01);
    }
    EXPECT_THROW(asymptote_estimate(ideal_model(), Flavor::A, 10.0), Error);
}

TEST(Features, MonotoneInSqueezing) {
    double prev_a = std::numeric_limits<double>::infinity();
    double prev_b = 0;
    for (double s = 2.0; s <= 12.0; s += 0.5) {
        const double a = crossover_point(ideal_model(), s, Flavor::A).n_c;
        const double b = crossover_point(ideal_model(), s, Flavor::B).n_c;
        EXPECT_LT(a, prev_a) << s;
        EXPECT_GT(b, prev_b) << s;
        prev_a = a;
        prev_b = b;
    }
}

TEST(Features, FromData) {
    std::vector<double> n;
    std::vector<double> e_f;
    for (int k = 0; k <= 30; ++k) {
        n.push_back(0.1 * k);
        e_f.push_back(eof_lower_bound(ideal_model().state(6.0, n.back())));
    }
    EXPECT_NEAR(sudden_death_from_data(n, e_f), 1.0, 1e-3);

    std::vector<double> flat(n.size(), 1.0);
    EXPECT_THROW(sudden_death_from_data(n, flat), Error);
}

TEST(Features, MinimizeIsBelowNeighbours) {
    const auto m = minimize_crossover(ideal_model(), CrossoverTarget::AB);
    EXPECT_GE(m.s_db, 2.0);
    EXPECT_LE(m.s_db, 12.0);
    EXPECT_LE(m.n_c, crossover_for_target(ideal_model(), std::max(2.0, m.s_db - 0.5), CrossoverTarget::AB));
    EXPECT_LE(m.n_c, crossover_for_target(ideal_model(), std::min(12.0, m.s_db + 0.5), CrossoverTarget::AB));
    EXPECT_EQ(parse_crossover_target("mean"), CrossoverTarget::MeanAB);
    EXPECT_EQ(to_string(CrossoverTarget::MeanAB), "mean");
    EXPECT_THROW(minimize_crossover(ideal_model(), CrossoverTarget::AB, 5.0, 4.0), Error);
}

}  // namespace
}  // namespace cvcorr
