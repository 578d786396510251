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

#include "cvcorr/qkd.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cvcorr/state_factory.hpp"

namespace cvcorr {

namespace {

constexpr double kThresholdLow = 1e-4;
constexpr double kThresholdHigh = 2.0;
constexpr int kMonotonicityProbes = 24;

double nats_to_bits(double nats) { return nats / std::numbers::ln2; }

double clamp_holevo(double chi) {
    if (chi < 0.0) {
        if (chi < -1e-10) throw Error(ErrorCode::NumericalError, "Holevo quantity evaluated below zero");
        return 0.0;
    }
    return chi;
}

}  // namespace

QkdScenario::QkdScenario(double r, double noise_q, double beta, std::optional<double> sigma2)
    : r_(r), noise_q_(noise_q), beta_(beta), sigma2_(sigma2.value_or(std::sinh(2.0 * r) / 2.0)) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw Error(ErrorCode::DomainError, "squeezing factor must be >= 0");
    if (!(noise_q >= 0.0) || !std::isfinite(noise_q)) {
        throw Error(ErrorCode::DomainError, "quadrature noise must be >= 0");
    }
    if (!(beta > 0.0 && beta < 1.0)) throw Error(ErrorCode::BadCoupling, "cloner coupling must lie in (0, 1)");
    if (!(sigma2_ >= 0.0) || !std::isfinite(sigma2_)) {
        throw Error(ErrorCode::DomainError, "codebook variance must be >= 0");
    }
}

QkdScenario QkdScenario::from_db(double s_db, double noise_q, double beta) {
    return {SqueezingSpec::from_db(s_db).factor(), noise_q, beta};
}

double QkdScenario::cloner_w() const { return std::max(1.0, 2.0 * noise() / beta_); }

Covariance eve_tms(double w) {
    if (!(w >= 1.0)) throw Error(ErrorCode::DomainError, "cloner variance W must be >= 1");
    Covariance::Matrix m = Covariance::Matrix::Zero(4, 4);
    const double cross = std::sqrt(w * w - 1.0) / 4.0;
    m.diagonal().setConstant(w / 4.0);
    m(0, 2) = m(2, 0) = cross;
    m(1, 3) = m(3, 1) = -cross;
    return Covariance(std::move(m));
}

Covariance cloner_state(const QkdScenario &scenario) {
    const Covariance joint = tensor(ideal_tms(scenario.r()), eve_tms(scenario.cloner_w()));
    return apply_symplectic(joint, SymplecticOperation<double>::beam_splitter(4, 1, 2, scenario.beta()));
}

// The cloner output is pure, so S(E) = S(AB) and, after the homodyne
// measurement on B, S(E | x_B) = S(A | x_B). Both sides stay well conditioned
// while Eve's blocks scale with W.
double holevo_quantity(const QkdScenario &scenario) {
    const Covariance full = cloner_state(scenario);
    const Covariance ab = partial_trace(full, {0, 1});
    const Covariance a_given_b = homodyne_condition(ab, 1, Quadrature::Q);
    return clamp_holevo(nats_to_bits(von_neumann_entropy(ab) - von_neumann_entropy(a_given_b)));
}

double holevo_quantity_eve(const QkdScenario &scenario) {
    const Covariance full = cloner_state(scenario);
    const Covariance eve = partial_trace(full, {2, 3});
    const Covariance bob_eve = partial_trace(full, {1, 2, 3});
    const Covariance eve_given_bob = homodyne_condition(bob_eve, 0, Quadrature::Q);
    return clamp_holevo(nats_to_bits(von_neumann_entropy(eve) - von_neumann_entropy(eve_given_bob)));
}

double shannon_mi(const QkdScenario &scenario) {
    const double beta = scenario.beta();
    const double signal = 4.0 * (1.0 - beta) * scenario.sigma2();
    const double noise = (1.0 - beta) * std::exp(-2.0 * scenario.r()) + 4.0 * scenario.noise_q();
    return 0.5 * std::log2(1.0 + signal / noise);
}

KeyResult secret_key(const QkdScenario &scenario) {
    KeyResult k;
    k.shannon_mi = shannon_mi(scenario);
    k.holevo = holevo_quantity(scenario);
    k.key = k.shannon_mi - k.holevo;
    return k;
}

double key_threshold(double s_db, double tolerance, double beta) {
    if (!(s_db > 0.0)) throw Error(ErrorCode::DomainError, "key threshold needs a positive squeezing level");
    if (!(tolerance > 0.0)) throw Error(ErrorCode::DomainError, "tolerance must be positive");
    const double r = SqueezingSpec::from_db(s_db).factor();
    auto key_at = [&](double nq) { return secret_key(QkdScenario(r, nq, beta)).key; };

    double lo = kThresholdLow;
    double hi = kThresholdHigh;
    double k_lo = key_at(lo);
    double k_hi = key_at(hi);
    if (!(k_lo > 0.0 && k_hi < 0.0)) {
        throw Error(ErrorCode::NoSignChange, "secret key does not change sign on [1e-4, 2] at " +
                                                 std::to_string(s_db) + " dB");
    }
    // The bisection relies on K falling monotonically across the bracket.
    double previous = k_lo;
    for (int i = 1; i <= kMonotonicityProbes; ++i) {
        const double nq = lo * std::pow(hi / lo, static_cast<double>(i) / kMonotonicityProbes);
        const double k = key_at(nq);
        if (k > previous) {
            throw Error(ErrorCode::NumericalError, "secret key is not monotone in n_q on the threshold bracket");
        }
        previous = k;
    }

    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double k_mid = key_at(mid);
        if (std::abs(k_mid) < tolerance && hi - lo < 1e-12) return mid;
        if (k_mid > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
    }
    mid = 0.5 * (lo + hi);
    if (std::abs(key_at(mid)) >= tolerance) {
        throw Error(ErrorCode::NumericalError, "key threshold bisection did not reach the requested tolerance");
    }
    return mid;
}

}  // namespace cvcorr
