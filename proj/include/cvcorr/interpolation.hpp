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

#ifndef CVCORR_INTERPOLATION_HPP
#define CVCORR_INTERPOLATION_HPP

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace cvcorr {

/// Piecewise cubic Hermite interpolant with Fritsch-Carlson slope limiting:
/// C1, exact at the knots, and monotone on every interval where the data are
/// monotone (no overshoot).
class MonotoneCubic {
   public:
    /// BadKnots unless xs is strictly increasing with at least two entries
    /// and ys has the same length.
    MonotoneCubic(std::vector<double> xs, std::vector<double> ys);

    /// Outside the knot range the end segments are extended.
    double operator()(double x) const;
    double derivative(double x) const;

    /// First root in [lo, hi] located from sign changes of the knot values
    /// and refined on the cubic segment. Returns the root and its knot bracket.
    std::optional<std::pair<double, std::pair<double, double>>> first_root(double lo, double hi) const;

    const std::vector<double> &xs() const { return xs_; }
    const std::vector<double> &ys() const { return ys_; }
    const std::vector<double> &slopes() const { return slopes_; }

   private:
    std::size_t segment(double x) const;

    std::vector<double> xs_;
    std::vector<double> ys_;
    std::vector<double> slopes_;
};

MonotoneCubic hermite_interpolate(std::span<const double> xs, std::span<const double> ys);

}  // namespace cvcorr

#endif  // CVCORR_INTERPOLATION_HPP
