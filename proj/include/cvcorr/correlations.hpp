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

// Bipartite correlation measures of a two-mode Gaussian state, all in nats.
//
// D_A is the discord left after a Gaussian measurement on B, D_B the one left
// after a measurement on A. E_F is the signed two-mode-squeezing lower bound on
// the entanglement of formation. The Delta fields are the discord-EoF
// differences, i.e. the net flows of locally inaccessible information.

#ifndef CVCORR_CORRELATIONS_HPP
#define CVCORR_CORRELATIONS_HPP

#include <string>

#include "cvcorr/symplectic.hpp"

namespace cvcorr {

enum class Party { A, B };

/// Which discord is compared against E_F: D_A, D_B or their mean.
enum class Flavor { A, B, AB };

std::string to_string(Flavor flavor);
Flavor parse_flavor(const std::string &name);

struct CorrelationReport {
    double d_a = 0;
    double d_b = 0;
    double e_f = 0;
    double i_ab = 0;
    double delta_a = 0;
    double delta_b = 0;
    double delta_ab = 0;
    double gamma = 0;

    double delta(Flavor flavor) const;
};

/// I_AB = f(sqrt I1) + f(sqrt I2) - f(nu+) - f(nu-).
double mutual_information(const Covariance &v);

/// Signed two-mode squeezing gamma that, removed from the state, brings it to
/// the PPT boundary. Positive iff entangled.
double eof_gamma(const Covariance &v);

/// Closed form of eof_gamma for the ideal noisy TMS family:
/// gamma(r, n) = 1/2 ln[(e^{2r} + n) / (1 + e^{2r} n)].
double gamma_ideal(double r, double n);

/// s_gamma [cosh^2 g ln cosh^2 g - sinh^2 g ln sinh^2 g].
double eof_from_gamma(double gamma);

double eof_lower_bound(const Covariance &v);

/// Gaussian discord after a measurement on `measured`. discord(v, Party::B)
/// is D_A; discord(v, Party::A) is D_B.
double discord(const Covariance &v, Party measured);

CorrelationReport correlation_report(const Covariance &v);

// Exposed for tests: the quantities below work on the local standard form in
// vacuum-1 units (every input entry multiplied by 4).

/// Minimum conditional-state determinant over Gaussian measurements on the
/// second party, for standard form (a, b, c_plus, c_minus) with b measured.
double min_conditional_determinant(const StandardForm<double> &sf);

/// gamma for a standard form in vacuum-1 units.
double ppt_boundary_gamma(const StandardForm<double> &sf);

}  // namespace cvcorr

#endif  // CVCORR_CORRELATIONS_HPP
