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

#ifndef CVCORR_STATE_FACTORY_HPP
#define CVCORR_STATE_FACTORY_HPP

#include <optional>
#include <string>

#include "cvcorr/symplectic.hpp"

namespace cvcorr {

/// dB per unit of squeezing factor: 20 log10(e).
double db_per_neper();

double squeezing_db_to_r(double level_db);
double squeezing_r_to_db(double r);

/// Squeezing level given either in dB or as the factor r.
class SqueezingSpec {
   public:
    static SqueezingSpec from_db(double level_db);
    static SqueezingSpec from_factor(double r);

    double level_db() const { return level_db_; }
    double factor() const { return factor_; }
    /// Degenerate amplifier gain G = e^{2r}.
    double gain() const;

   private:
    SqueezingSpec(double level_db, double factor) : level_db_(level_db), factor_(factor) {}
    double level_db_;
    double factor_;
};

/// Gain-dependent amplifier noise n_j(G) = chi1 (G - 1)^chi2.
struct JpaNoiseModel {
    double chi1 = 0.0;
    double chi2 = 1.0;
};

double jpa_noise(double gain, const JpaNoiseModel &jpa);

/// Directional coupler injecting thermal noise into mode B.
class NoiseChannelSpec {
   public:
    /// BadCoupling unless 0 < coupling < 1.
    NoiseChannelSpec(double coupling_beta, double env_photons);
    /// Coupler that injects `effective_n` = beta * nbar photons.
    static NoiseChannelSpec from_effective(double coupling_beta, double effective_n);

    double coupling_beta() const { return beta_; }
    double env_photons() const { return env_photons_; }
    double effective_n() const { return beta_ * env_photons_; }

   private:
    double beta_;
    double env_photons_;
};

/// Pure two-mode squeezed vacuum, A squeezed in q and B in p before a 50:50
/// splitter; cross block sinh(2r)/4 diag(1, -1).
Covariance ideal_tms(const SqueezingSpec &spec);
Covariance ideal_tms(double r);

/// Ideal-limit noise injection: adds n/2 to both B quadrature variances.
Covariance inject_noise_ideal(const Covariance &v, double n);

/// Thermal mode with nbar photons coupled into B through a beam splitter of
/// power coupling beta, environment traced out.
Covariance inject_noise_coupler(const Covariance &v, const NoiseChannelSpec &channel);

/// Noisy TMS dressed with amplifier noise: prefactor (1 + 2 n_j(G)) on all blocks.
Covariance realistic_tms(const SqueezingSpec &spec, const JpaNoiseModel &jpa, const NoiseChannelSpec &channel);

// ---------------------------------------------------------------------------
// Model selection shared by sweeps, feature extraction and fitting

enum class ModelKind { Ideal, Coupler, Realistic };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string &name);

/// Maps a (squeezing level, injected photons) point to a two-mode state.
struct ModelSpec {
    ModelKind kind = ModelKind::Ideal;
    /// Directional-coupler power coupling (Coupler and Realistic).
    double coupling_beta = 0.01;
    /// Amplifier noise (Realistic).
    JpaNoiseModel jpa{};

    Covariance state(double s_db, double n) const;
};

/// Scenario file contents: a model plus an optional single operating point.
struct Scenario {
    ModelSpec model;
    std::optional<double> squeezing_db;
    std::optional<double> noise_photons;
};

}  // namespace cvcorr

#endif  // CVCORR_STATE_FACTORY_HPP
