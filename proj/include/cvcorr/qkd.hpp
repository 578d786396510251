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

// Entanglement-based CV-QKD with reverse reconciliation under an entangling
// cloner attack. All information quantities in this module are in bits.
//
// Mode order of the cloner state: A, B, E1, E2. Eve feeds E1 of her own TMS
// pair (variance W/4) into B's line through a beam splitter of coupling beta.

#ifndef CVCORR_QKD_HPP
#define CVCORR_QKD_HPP

#include <optional>

#include "cvcorr/symplectic.hpp"

namespace cvcorr {

inline constexpr double kDefaultClonerCoupling = 1e-4;

class QkdScenario {
   public:
    /// r: resource squeezing factor; noise_q: photons added to the detected
    /// quadrature; sigma2 defaults to sinh(2r)/2.
    QkdScenario(double r, double noise_q, double beta = kDefaultClonerCoupling,
                std::optional<double> sigma2 = std::nullopt);
    static QkdScenario from_db(double s_db, double noise_q, double beta = kDefaultClonerCoupling);

    double r() const { return r_; }
    double noise_q() const { return noise_q_; }
    double beta() const { return beta_; }
    double sigma2() const { return sigma2_; }
    /// Total injected photons n = 2 n_q.
    double noise() const { return 2.0 * noise_q_; }
    /// Cloner variance parameter W = max(1, 2n / beta).
    double cloner_w() const;

   private:
    double r_;
    double noise_q_;
    double beta_;
    double sigma2_;
};

struct KeyResult {
    double shannon_mi = 0;
    double holevo = 0;
    double key = 0;

    bool secure() const { return key > 0.0; }
};

/// Eve's two-mode squeezed ancilla pair with variance parameter W >= 1.
Covariance eve_tms(double w);

/// Four-mode state after the cloner: (1 + C + 1)(V_AB + V_E1E2)(1 + C + 1)^T.
Covariance cloner_state(const QkdScenario &scenario);

double holevo_quantity(const QkdScenario &scenario);
/// Same quantity from Eve's reduced and B-conditioned states directly.
/// Loses accuracy as W grows.
double holevo_quantity_eve(const QkdScenario &scenario);
double shannon_mi(const QkdScenario &scenario);
KeyResult secret_key(const QkdScenario &scenario);

/// Noise n_q at which the key vanishes, for squeezing level s_db, by bisection
/// on [1e-4, 2]. The returned point satisfies |K| < tolerance.
double key_threshold(double s_db, double tolerance = 1e-10, double beta = kDefaultClonerCoupling);

}  // namespace cvcorr

#endif  // CVCORR_QKD_HPP
