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

#include "cvcorr/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "cvcorr/errors.hpp"

namespace cvcorr {

namespace {

int sign(double x) { return (x > 0.0) - (x < 0.0); }

// One-sided three-point end slope, limited so the end segment does not
// overshoot.
double end_slope(double h0, double h1, double d0, double d1) {
    double slope = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (sign(slope) != sign(d0)) {
        slope = 0.0;
    } else if (sign(d0) != sign(d1) && std::abs(slope) > std::abs(3.0 * d0)) {
        slope = 3.0 * d0;
    }
    return slope;
}

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> xs, std::vector<double> ys) : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.size() < 2) throw Error(ErrorCode::BadKnots, "need at least two knots");
    if (xs_.size() != ys_.size()) throw Error(ErrorCode::BadKnots, "knot and value counts differ");
    for (std::size_t k = 0; k < xs_.size(); ++k) {
        if (!std::isfinite(xs_[k]) || !std::isfinite(ys_[k])) throw Error(ErrorCode::BadKnots, "non-finite knot");
        if (k > 0 && !(xs_[k] > xs_[k - 1])) throw Error(ErrorCode::BadKnots, "knots must be strictly increasing");
    }

    const std::size_t n = xs_.size();
    std::vector<double> h(n - 1);
    std::vector<double> secant(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        h[k] = xs_[k + 1] - xs_[k];
        secant[k] = (ys_[k + 1] - ys_[k]) / h[k];
    }

    slopes_.assign(n, 0.0);
    if (n == 2) {
        slopes_[0] = slopes_[1] = secant[0];
        return;
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double left = secant[k - 1];
        const double right = secant[k];
        if (sign(left) * sign(right) <= 0) continue;
        // weighted harmonic mean
        const double w1 = 2.0 * h[k] + h[k - 1];
        const double w2 = h[k] + 2.0 * h[k - 1];
        slopes_[k] = (w1 + w2) / (w1 / left + w2 / right);
    }
    slopes_[0] = end_slope(h[0], h[1], secant[0], secant[1]);
    slopes_[n - 1] = end_slope(h[n - 2], h[n - 3], secant[n - 2], secant[n - 3]);
}

std::size_t MonotoneCubic::segment(double x) const {
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const auto idx = static_cast<std::size_t>(std::distance(xs_.begin(), it));
    if (idx == 0) return 0;
    return std::min(idx - 1, xs_.size() - 2);
}

double MonotoneCubic::operator()(double x) const {
    const std::size_t k = segment(x);
    const double h = xs_[k + 1] - xs_[k];
    const double t = (x - xs_[k]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * ys_[k] + h10 * h * slopes_[k] + h01 * ys_[k + 1] + h11 * h * slopes_[k + 1];
}

double MonotoneCubic::derivative(double x) const {
    const std::size_t k = segment(x);
    const double h = xs_[k + 1] - xs_[k];
    const double t = (x - xs_[k]) / h;
    const double t2 = t * t;
    const double d00 = (6.0 * t2 - 6.0 * t) / h;
    const double d10 = 3.0 * t2 - 4.0 * t + 1.0;
    const double d01 = (-6.0 * t2 + 6.0 * t) / h;
    const double d11 = 3.0 * t2 - 2.0 * t;
    return d00 * ys_[k] + d10 * slopes_[k] + d01 * ys_[k + 1] + d11 * slopes_[k + 1];
}

std::optional<std::pair<double, std::pair<double, double>>> MonotoneCubic::first_root(double lo, double hi) const {
    for (std::size_t k = 0; k + 1 < xs_.size(); ++k) {
        const double x0 = xs_[k];
        const double x1 = xs_[k + 1];
        if (x1 < lo || x0 > hi) continue;
        const double y0 = ys_[k];
        const double y1 = ys_[k + 1];
        if (y0 == 0.0 && x0 >= lo) return std::make_pair(x0, std::make_pair(x0, x1));
        if (sign(y0) * sign(y1) >= 0) continue;
        double a = x0;
        double b = x1;
        double fa = y0;
        for (int iter = 0; iter < 200 && b - a > 1e-15 * std::max(1.0, std::abs(b)); ++iter) {
            const double m = 0.5 * (a + b);
            const double fm = (*this)(m);
            if (fm == 0.0) {
                a = b = m;
                break;
            }
            if (sign(fm) == sign(fa)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        const double root = 0.5 * (a + b);
        if (root < lo || root > hi) continue;
        return std::make_pair(root, std::make_pair(x0, x1));
    }
    if (!ys_.empty() && ys_.back() == 0.0 && xs_.back() >= lo && xs_.back() <= hi) {
        return std::make_pair(xs_.back(), std::make_pair(xs_[xs_.size() - 2], xs_.back()));
    }
    return std::nullopt;
}

MonotoneCubic hermite_interpolate(std::span<const double> xs, std::span<const double> ys) {
    return {std::vector<double>(xs.begin(), xs.end()), std::vector<double>(ys.begin(), ys.end())};
}

}  // namespace cvcorr
