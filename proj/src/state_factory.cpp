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

#include "cvcorr/state_factory.hpp"

#include <cmath>
#include <numbers>

namespace cvcorr {

namespace {

void require_finite(double x, const char *what) {
    if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, what);
}

Covariance tms_matrix(double diag_a, double diag_b, double cross) {
    Covariance::Matrix m = Covariance::Matrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = diag_a;
    m(2, 2) = m(3, 3) = diag_b;
    m(0, 2) = m(2, 0) = cross;
    m(1, 3) = m(3, 1) = -cross;
    return Covariance(std::move(m));
}

}  // namespace

double db_per_neper() { return 20.0 * std::numbers::log10e; }

double squeezing_db_to_r(double level_db) {
    require_finite(level_db, "squeezing level");
    return level_db / db_per_neper();
}

double squeezing_r_to_db(double r) {
    require_finite(r, "squeezing factor");
    return r * db_per_neper();
}

SqueezingSpec SqueezingSpec::from_db(double level_db) {
    if (!(level_db >= 0.0)) throw Error(ErrorCode::DomainError, "squeezing level must be >= 0 dB");
    return {level_db, squeezing_db_to_r(level_db)};
}

SqueezingSpec SqueezingSpec::from_factor(double r) {
    if (!(r >= 0.0)) throw Error(ErrorCode::DomainError, "squeezing factor must be >= 0");
    return {squeezing_r_to_db(r), r};
}

double SqueezingSpec::gain() const { return std::exp(2.0 * factor_); }

double jpa_noise(double gain, const JpaNoiseModel &jpa) {
    require_finite(gain, "gain");
    if (gain < 1.0) throw Error(ErrorCode::DomainError, "amplifier gain must be >= 1");
    if (jpa.chi1 < 0.0) throw Error(ErrorCode::DomainError, "chi1 must be >= 0");
    if (gain == 1.0) return 0.0;
    return jpa.chi1 * std::pow(gain - 1.0, jpa.chi2);
}

NoiseChannelSpec::NoiseChannelSpec(double coupling_beta, double env_photons)
    : beta_(coupling_beta), env_photons_(env_photons) {
    if (!(coupling_beta > 0.0 && coupling_beta < 1.0)) {
        throw Error(ErrorCode::BadCoupling, "coupling beta must lie in (0, 1)");
    }
    if (!(env_photons >= 0.0) || !std::isfinite(env_photons)) {
        throw Error(ErrorCode::DomainError, "environment photon number must be finite and >= 0");
    }
}

NoiseChannelSpec NoiseChannelSpec::from_effective(double coupling_beta, double effective_n) {
    if (!(coupling_beta > 0.0 && coupling_beta < 1.0)) {
        throw Error(ErrorCode::BadCoupling, "coupling beta must lie in (0, 1)");
    }
    return {coupling_beta, effective_n / coupling_beta};
}

Covariance ideal_tms(const SqueezingSpec &spec) { return ideal_tms(spec.factor()); }

Covariance ideal_tms(double r) {
    if (!(r >= 0.0)) throw Error(ErrorCode::DomainError, "squeezing factor must be >= 0");
    const double ch = std::cosh(2.0 * r) / 4.0;
    return tms_matrix(ch, ch, std::sinh(2.0 * r) / 4.0);
}

Covariance inject_noise_ideal(const Covariance &v, double n) {
    require_two_mode(v);
    if (!(n >= 0.0) || !std::isfinite(n)) throw Error(ErrorCode::DomainError, "noise photons must be >= 0");
    auto m = v.matrix();
    m(2, 2) += n / 2.0;
    m(3, 3) += n / 2.0;
    return Covariance(std::move(m));
}

Covariance inject_noise_coupler(const Covariance &v, const NoiseChannelSpec &channel) {
    require_two_mode(v);
    const Covariance joint = tensor(v, Covariance::thermal(channel.env_photons()));
    const auto coupler = SymplecticOperation<double>::beam_splitter(3, 1, 2, channel.coupling_beta());
    return partial_trace(apply_symplectic(joint, coupler), {0, 1});
}

Covariance realistic_tms(const SqueezingSpec &spec, const JpaNoiseModel &jpa, const NoiseChannelSpec &channel) {
    const double r = spec.factor();
    const double beta = channel.coupling_beta();
    const double prefactor = (1.0 + 2.0 * jpa_noise(spec.gain(), jpa)) / 4.0;
    const double ch = std::cosh(2.0 * r);
    const double diag_b = (1.0 - beta) * ch + beta * (1.0 + 2.0 * channel.env_photons());
    const double cross = std::sqrt(1.0 - beta) * std::sinh(2.0 * r);
    return tms_matrix(prefactor * ch, prefactor * diag_b, prefactor * cross);
}

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::Ideal: return "ideal";
        case ModelKind::Coupler: return "coupler";
        case ModelKind::Realistic: return "realistic";
    }
    return "unknown";
}

ModelKind parse_model_kind(const std::string &name) {
    if (name == "ideal") return ModelKind::Ideal;
    if (name == "coupler") return ModelKind::Coupler;
    if (name == "realistic") return ModelKind::Realistic;
    throw Error(ErrorCode::ParseError, "unknown model '" + name + "' (expected ideal, coupler or realistic)");
}

Covariance ModelSpec::state(double s_db, double n) const {
    const auto squeezing = SqueezingSpec::from_db(s_db);
    switch (kind) {
        case ModelKind::Ideal:
            return inject_noise_ideal(ideal_tms(squeezing), n);
        case ModelKind::Coupler:
            return inject_noise_coupler(ideal_tms(squeezing), NoiseChannelSpec::from_effective(coupling_beta, n));
        case ModelKind::Realistic:
            return realistic_tms(squeezing, jpa, NoiseChannelSpec::from_effective(coupling_beta, n));
    }
    throw Error(ErrorCode::DomainError, "unknown model kind");
}

}  // namespace cvcorr
