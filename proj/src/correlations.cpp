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

#include "cvcorr/correlations.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace cvcorr {

namespace {

constexpr double kRadicandTolerance = 1e-12;
constexpr double kDiscordClamp = 1e-10;
constexpr double kPureMarginalGuard = 1e-9;
// Standard forms whose cross entries cancel to this relative level are
// treated as c_minus = -c_plus exactly.
constexpr double kAntiCorrelatedTolerance = 1e-10;

double clamped_sqrt(double radicand, double scale, const char *what) {
    if (radicand < 0.0) {
        if (radicand < -kRadicandTolerance * std::max(1.0, scale)) {
            throw Error(ErrorCode::NumericalError, std::string("negative radicand in ") + what);
        }
        return 0.0;
    }
    return std::sqrt(radicand);
}

StandardForm<double> vacuum_units(const Covariance &v) {
    auto sf = standard_form(v);
    sf.a *= 4.0;
    sf.b *= 4.0;
    sf.c_plus *= 4.0;
    sf.c_minus *= 4.0;
    return sf;
}

StandardForm<double> swapped(StandardForm<double> sf) {
    std::swap(sf.a, sf.b);
    return sf;
}

double clamp_discord(double d) {
    if (d < 0.0) {
        if (d < -kDiscordClamp) throw Error(ErrorCode::NumericalError, "discord evaluated below zero");
        return 0.0;
    }
    return d;
}

// Shared by discord and the report: one eigensolve per state.
struct Prepared {
    StandardForm<double> sf;  // vacuum-1 units
    double nu_plus;           // 1/4 units
    double nu_minus;
};

Prepared prepare(const Covariance &v) {
    require_two_mode(v);
    require_physical(v);
    const auto nus = symplectic_eigenvalues(v);
    return {vacuum_units(v), std::max(nus(1), 0.25), std::max(nus(0), 0.25)};
}

double discord_prepared(const Prepared &p, Party measured) {
    const auto sf = measured == Party::B ? p.sf : swapped(p.sf);
    const double e_min = min_conditional_determinant(sf);
    const double d = entropy_f(sf.b / 4.0) - entropy_f(p.nu_plus) - entropy_f(p.nu_minus) +
                     entropy_f(std::max(0.25, std::sqrt(e_min) / 4.0));
    return clamp_discord(d);
}

// Smallest-|g| real root of alpha w^2 + mid w + beta = 0 with w = e^{4g} > 0.
double nearest_boundary_root(double alpha, double mid, double beta) {
    std::array<double, 2> roots{};
    int count = 0;
    if (alpha == 0.0) {
        if (mid != 0.0) roots[count++] = -beta / mid;
    } else {
        const double disc = mid * mid - 4.0 * alpha * beta;
        if (disc >= 0.0) {
            const double q = -0.5 * (mid + std::copysign(std::sqrt(disc), mid));
            roots[count++] = q / alpha;
            if (q != 0.0) roots[count++] = beta / q;
        }
    }
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < count; ++k) {
        if (roots[k] > 0.0) {
            const double g = 0.25 * std::log(roots[k]);
            if (std::abs(g) < std::abs(best)) best = g;
        }
    }
    if (!std::isfinite(best)) {
        throw Error(ErrorCode::NumericalError, "no PPT boundary along the two-mode squeezing direction");
    }
    return best;
}

}  // namespace

std::string to_string(Flavor flavor) {
    switch (flavor) {
        case Flavor::A: return "A";
        case Flavor::B: return "B";
        case Flavor::AB: return "AB";
    }
    return "?";
}

Flavor parse_flavor(const std::string &name) {
    if (name == "A" || name == "a") return Flavor::A;
    if (name == "B" || name == "b") return Flavor::B;
    if (name == "AB" || name == "ab") return Flavor::AB;
    throw Error(ErrorCode::ParseError, "unknown flavor '" + name + "' (expected A, B or AB)");
}

double CorrelationReport::delta(Flavor flavor) const {
    switch (flavor) {
        case Flavor::A: return delta_a;
        case Flavor::B: return delta_b;
        case Flavor::AB: return delta_ab;
    }
    return delta_ab;
}

double min_conditional_determinant(const StandardForm<double> &sf) {
    const double a = sf.a;
    const double b = sf.b;
    const double c1 = sf.c_plus;
    const double c2 = sf.c_minus;
    const double big_a = a * a;
    const double big_b = b * b;
    const double big_c = c1 * c2;
    const double big_d = (a * b - c1 * c1) * (a * b - c2 * c2);
    const double scale = big_a * big_b + big_d;

    const double gap = big_d - big_a * big_b;
    const bool general_branch = gap * gap <= (1.0 + big_b) * big_c * big_c * (big_a + big_d);
    if (general_branch && std::abs(big_b - 1.0) >= kPureMarginalGuard) {
        // C^2 + (B-1)(D-A), factored so that pure states do not cancel
        const double left = a * (big_b - 1.0) - b * c1 * c1;
        const double right = a * (big_b - 1.0) - b * c2 * c2;
        const double root = clamped_sqrt(left * right, scale, "conditional entropy (general branch)");
        const double bm1 = big_b - 1.0;
        return (2.0 * big_c * big_c + bm1 * (big_d - big_a) + 2.0 * std::abs(big_c) * root) / (bm1 * bm1);
    }
    // C^4 + (D-AB)^2 - 2C^2(AB+D) = a^2 b^2 (c1^2 - c2^2)^2
    const double root = a * b * std::abs(c1 * c1 - c2 * c2);
    return (big_a * big_b - big_c * big_c + big_d - root) / (2.0 * big_b);
}

double ppt_boundary_gamma(const StandardForm<double> &sf) {
    const double a = sf.a;
    const double b = sf.b;
    const double c1 = sf.c_plus;
    const double c2 = sf.c_minus;

    if (std::abs(c1 + c2) <= kAntiCorrelatedTolerance * std::max(1.0, std::abs(c1))) {
        // Cross block c diag(1, -1): the boundary condition is a quadratic in
        // t = e^{2g}, (s - 2c) t^2 - 2(k + 1) t + (s + 2c) = 0, whose smaller
        // root is the first crossing.
        const double c = 0.5 * (c1 - c2);
        const double k = a * b - c * c;
        const double s = a + b;
        const double disc = ((k - 1.0) - (a - b)) * ((k - 1.0) + (a - b));
        const double root = clamped_sqrt(disc, k * k, "PPT boundary");
        return 0.5 * std::log((s + 2.0 * c) / ((k + 1.0) + root));
    }

    // General standard form: solve I3(g) = (Delta - 1 - I4) / 4 for the cross
    // determinant of the de-squeezed state, a quadratic in w = e^{4g}.
    const double h = 0.5 * (a + b);
    const double delta = a * a + b * b + 2.0 * c1 * c2;
    const double i4 = (a * b - c1 * c1) * (a * b - c2 * c2);
    const double target = 0.25 * (delta - 1.0 - i4);
    const double alpha = (c1 - h) * (c2 + h);
    const double beta = (c1 + h) * (c2 - h);
    const double mid = 2.0 * c1 * c2 + 2.0 * h * h - 4.0 * target;
    return nearest_boundary_root(alpha, mid, beta);
}

double mutual_information(const Covariance &v) {
    const auto p = prepare(v);
    const double i = entropy_f(p.sf.a / 4.0) + entropy_f(p.sf.b / 4.0) - entropy_f(p.nu_plus) -
                     entropy_f(p.nu_minus);
    return std::max(0.0, i);
}

double eof_gamma(const Covariance &v) {
    require_two_mode(v);
    require_physical(v);
    return ppt_boundary_gamma(vacuum_units(v));
}

double gamma_ideal(double r, double n) {
    const double g = std::exp(2.0 * r);
    return 0.5 * std::log((g + n) / (1.0 + g * n));
}

double eof_from_gamma(double gamma) {
    if (gamma == 0.0) return 0.0;
    const double c2 = std::cosh(gamma) * std::cosh(gamma);
    const double s2 = std::sinh(gamma) * std::sinh(gamma);
    const double magnitude = c2 * std::log(c2) - s2 * std::log(s2);
    return gamma > 0.0 ? magnitude : -magnitude;
}

double eof_lower_bound(const Covariance &v) { return eof_from_gamma(eof_gamma(v)); }

double discord(const Covariance &v, Party measured) { return discord_prepared(prepare(v), measured); }

CorrelationReport correlation_report(const Covariance &v) {
    const auto p = prepare(v);
    CorrelationReport r;
    r.d_a = discord_prepared(p, Party::B);
    r.d_b = discord_prepared(p, Party::A);
    r.gamma = ppt_boundary_gamma(p.sf);
    r.e_f = eof_from_gamma(r.gamma);
    r.i_ab = std::max(0.0, entropy_f(p.sf.a / 4.0) + entropy_f(p.sf.b / 4.0) - entropy_f(p.nu_plus) -
                               entropy_f(p.nu_minus));
    r.delta_a = r.d_a - r.e_f;
    r.delta_b = r.d_b - r.e_f;
    r.delta_ab = 0.5 * (r.d_a + r.d_b) - r.e_f;
    return r;
}

}  // namespace cvcorr
