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

// Gaussian covariance-matrix algebra.
//
// Conventions used throughout the library:
//   * quadrature order (q1, p1, q2, p2, ...)
//   * vacuum variance 1/4 per quadrature, so every symplectic eigenvalue of a
//     physical state satisfies nu >= 1/4
//   * entropies in nats
//
// Everything here is a pure function of immutable values.

#ifndef CVCORR_SYMPLECTIC_HPP
#define CVCORR_SYMPLECTIC_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cvcorr/errors.hpp"

namespace cvcorr {

template <typename Scalar>
constexpr Scalar vacuum_variance() {
    return Scalar(1) / Scalar(4);
}

/// Tolerance on the Heisenberg bound nu >= 1/4, scaled by max(1, max |V_ij|).
inline constexpr double kPhysicalityTolerance = 1e-9;
/// Relative tolerance on matrix symmetry.
inline constexpr double kSymmetryTolerance = 1e-12;

template <typename Scalar = double>
class CovarianceMatrix {
   public:
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Block = Eigen::Matrix<Scalar, 2, 2>;

    CovarianceMatrix() = default;

    explicit CovarianceMatrix(Matrix entries) : entries_(std::move(entries)) {
        if (entries_.rows() != entries_.cols() || entries_.rows() % 2 != 0) {
            throw Error(ErrorCode::DimensionMismatch,
                        "covariance matrix must be square with even dimension, got " +
                            std::to_string(entries_.rows()) + "x" + std::to_string(entries_.cols()));
        }
    }

    static CovarianceMatrix vacuum(int n_modes) {
        return CovarianceMatrix(Matrix::Identity(2 * n_modes, 2 * n_modes) * vacuum_variance<Scalar>());
    }

    /// Single-mode thermal state holding `photons` mean photons.
    static CovarianceMatrix thermal(Scalar photons) {
        return CovarianceMatrix(Matrix::Identity(2, 2) * ((Scalar(1) + Scalar(2) * photons) / Scalar(4)));
    }

    int modes() const { return static_cast<int>(entries_.rows() / 2); }
    bool empty() const { return entries_.size() == 0; }

    const Matrix &matrix() const { return entries_; }
    Scalar operator()(Eigen::Index row, Eigen::Index col) const { return entries_(row, col); }

    /// 2x2 block coupling mode i (rows) to mode j (columns).
    Block block(int i, int j) const { return entries_.template block<2, 2>(2 * i, 2 * j); }

   private:
    Matrix entries_;
};

using Covariance = CovarianceMatrix<double>;

enum class Quadrature { Q, P };

// ---------------------------------------------------------------------------
// Symplectic form and eigenvalues

template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> symplectic_form(int n_modes) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> omega =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        omega(2 * k, 2 * k + 1) = Scalar(1);
        omega(2 * k + 1, 2 * k) = Scalar(-1);
    }
    return omega;
}

namespace detail {

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived> &m) {
    if (!m.allFinite()) throw Error(ErrorCode::NonFinite, "matrix has NaN or infinite entries");
}

template <typename Scalar>
typename CovarianceMatrix<Scalar>::Matrix symmetrized(const typename CovarianceMatrix<Scalar>::Matrix &m) {
    return (m + m.transpose()) / Scalar(2);
}

template <typename Scalar>
bool positive_definite(const typename CovarianceMatrix<Scalar>::Matrix &m) {
    if (m.size() == 0) return true;
    Eigen::SelfAdjointEigenSolver<typename CovarianceMatrix<Scalar>::Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() > Scalar(0);
}

// Eigenvalues of the Hermitian matrix i V^{1/2} Omega V^{1/2} come in +-nu
// pairs. Hermitian eigensolvers give each nu with absolute error of order
// eps*|V|, so nearly-pure spectra stay accurate.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> spectrum_positive_definite(
    const typename CovarianceMatrix<Scalar>::Matrix &v) {
    using Matrix = typename CovarianceMatrix<Scalar>::Matrix;
    using Complex = std::complex<Scalar>;
    using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
    const int n = static_cast<int>(v.rows() / 2);
    Eigen::SelfAdjointEigenSolver<Matrix> root(v);
    const Matrix half = root.operatorSqrt();
    const Matrix m = half * symplectic_form<Scalar>(n) * half;
    const ComplexMatrix h = Complex(0, 1) * m.template cast<Complex>();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    // ascending; the upper half holds +nu
    return es.eigenvalues().tail(n);
}

// Fallback for matrices that are not positive definite: |eig(Omega V)|.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> spectrum_general(const typename CovarianceMatrix<Scalar>::Matrix &v) {
    using Matrix = typename CovarianceMatrix<Scalar>::Matrix;
    const int n = static_cast<int>(v.rows() / 2);
    Eigen::EigenSolver<Matrix> es(symplectic_form<Scalar>(n) * v, false);
    std::vector<Scalar> mags;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) mags.push_back(std::abs(es.eigenvalues()(k)));
    std::sort(mags.begin(), mags.end());
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(n);
    // each magnitude appears twice
    for (int k = 0; k < n; ++k) out(k) = mags[2 * k + 1];
    return out;
}

}  // namespace detail

/// Symplectic eigenvalues in ascending order. Throws Unphysical unless V is
/// positive definite.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> symplectic_eigenvalues(const CovarianceMatrix<Scalar> &v) {
    detail::require_finite(v.matrix());
    const auto sym = detail::symmetrized<Scalar>(v.matrix());
    if (!detail::positive_definite<Scalar>(sym)) {
        throw Error(ErrorCode::Unphysical, "covariance matrix is not positive definite");
    }
    return detail::spectrum_positive_definite<Scalar>(sym);
}

// ---------------------------------------------------------------------------
// Validation

enum class Violation { Asymmetric, Unphysical, NotPositiveDefinite };

inline std::string to_string(Violation v) {
    switch (v) {
        case Violation::Asymmetric: return "asymmetric";
        case Violation::Unphysical: return "unphysical";
        case Violation::NotPositiveDefinite: return "not-positive-definite";
    }
    return "unknown";
}

template <typename Scalar = double>
struct ValidationVerdict {
    std::vector<Violation> violations;
    /// Smallest symplectic eigenvalue; meaningful whenever the matrix is non-empty.
    Scalar min_symplectic_eigenvalue = vacuum_variance<Scalar>();

    bool clean() const { return violations.empty(); }
    bool has(Violation v) const { return std::find(violations.begin(), violations.end(), v) != violations.end(); }
};

template <typename Scalar>
ValidationVerdict<Scalar> validate(const CovarianceMatrix<Scalar> &v) {
    detail::require_finite(v.matrix());
    ValidationVerdict<Scalar> verdict;
    if (v.empty()) return verdict;

    const auto &m = v.matrix();
    const Scalar scale = std::max(Scalar(1), m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > Scalar(kSymmetryTolerance) * scale) {
        verdict.violations.push_back(Violation::Asymmetric);
    }
    const auto sym = detail::symmetrized<Scalar>(m);
    const bool pd = detail::positive_definite<Scalar>(sym);
    const auto nus = pd ? detail::spectrum_positive_definite<Scalar>(sym) : detail::spectrum_general<Scalar>(sym);
    verdict.min_symplectic_eigenvalue = nus.minCoeff();
    if (verdict.min_symplectic_eigenvalue < vacuum_variance<Scalar>() - Scalar(kPhysicalityTolerance) * scale) {
        verdict.violations.push_back(Violation::Unphysical);
    }
    if (!pd) verdict.violations.push_back(Violation::NotPositiveDefinite);
    return verdict;
}

template <typename Scalar>
void require_physical(const CovarianceMatrix<Scalar> &v) {
    const auto verdict = validate(v);
    if (!verdict.clean()) {
        std::string what;
        for (auto violation : verdict.violations) what += (what.empty() ? "" : ", ") + to_string(violation);
        throw Error(ErrorCode::Unphysical, "covariance matrix fails validation (" + what + ")");
    }
}

template <typename Scalar>
void require_two_mode(const CovarianceMatrix<Scalar> &v) {
    if (v.modes() != 2) {
        throw Error(ErrorCode::DimensionMismatch, "expected a two-mode state, got " + std::to_string(v.modes()) +
                                                      " modes");
    }
}

// ---------------------------------------------------------------------------
// Entropy

/// f(x) = (2x + 1/2) ln(2x + 1/2) - (2x - 1/2) ln(2x - 1/2), the entropy of
/// one symplectic mode with eigenvalue x.
template <typename Scalar>
Scalar entropy_f(Scalar x) {
    using std::log;
    if (!std::isfinite(static_cast<double>(x))) throw Error(ErrorCode::NonFinite, "entropy_f argument");
    if (x < vacuum_variance<Scalar>() - Scalar(1e-12)) {
        throw Error(ErrorCode::DomainError, "entropy_f requires x >= 1/4");
    }
    const Scalar upper = Scalar(2) * x + Scalar(0.5);
    const Scalar lower = Scalar(2) * x - Scalar(0.5);
    const Scalar lower_term = lower > Scalar(0) ? lower * log(lower) : Scalar(0);
    return upper * log(upper) - lower_term;
}

template <typename Scalar>
Scalar von_neumann_entropy(const CovarianceMatrix<Scalar> &v) {
    if (v.empty()) return Scalar(0);
    require_physical(v);
    const auto nus = symplectic_eigenvalues(v);
    Scalar s = 0;
    for (Eigen::Index k = 0; k < nus.size(); ++k) s += entropy_f(std::max(nus(k), vacuum_variance<Scalar>()));
    return s;
}

// ---------------------------------------------------------------------------
// Two-mode invariants

template <typename Scalar = double>
struct SymplecticSummary {
    Scalar i1 = 0;  ///< det of the A block
    Scalar i2 = 0;  ///< det of the B block
    Scalar i3 = 0;  ///< det of the A-B cross block
    Scalar i4 = 0;  ///< det of the full matrix
    Scalar delta = 0;  ///< i1 + i2 + 2 i3
    Scalar nu_plus = 0;
    Scalar nu_minus = 0;
    Scalar nu_pt_min = 0;  ///< smallest symplectic eigenvalue after partial transposition
};

/// Flips the sign of the momentum quadrature of `mode`.
template <typename Scalar>
CovarianceMatrix<Scalar> partial_transpose(const CovarianceMatrix<Scalar> &v, int mode) {
    if (mode < 0 || mode >= v.modes()) throw Error(ErrorCode::BadIndex, "mode index out of range");
    auto m = v.matrix();
    m.row(2 * mode + 1) *= Scalar(-1);
    m.col(2 * mode + 1) *= Scalar(-1);
    return CovarianceMatrix<Scalar>(std::move(m));
}

template <typename Scalar>
SymplecticSummary<Scalar> symplectic_summary(const CovarianceMatrix<Scalar> &v) {
    require_two_mode(v);
    require_physical(v);
    SymplecticSummary<Scalar> s;
    s.i1 = v.block(0, 0).determinant();
    s.i2 = v.block(1, 1).determinant();
    s.i3 = v.block(0, 1).determinant();
    s.i4 = v.matrix().determinant();
    s.delta = s.i1 + s.i2 + Scalar(2) * s.i3;
    const auto nus = symplectic_eigenvalues(v);
    s.nu_minus = nus(0);
    s.nu_plus = nus(1);
    s.nu_pt_min = symplectic_eigenvalues(partial_transpose(v, 1))(0);
    return s;
}

/// Closed-form two-mode spectrum from the invariants:
/// nu^2 = (Delta +- sqrt(Delta^2 - 4 I4)) / 2, discriminant clamped at 0 when
/// within -1e-12. Loses accuracy near pure states (the discriminant cancels);
/// kept as a cross-check of the eigensolver route.
template <typename Scalar>
std::pair<Scalar, Scalar> invariant_spectrum(Scalar delta, Scalar i4) {
    using std::sqrt;
    Scalar disc = delta * delta - Scalar(4) * i4;
    if (disc < Scalar(0)) {
        if (disc < Scalar(-1e-12)) throw Error(ErrorCode::NumericalError, "negative symplectic discriminant");
        disc = 0;
    }
    const Scalar root = sqrt(disc);
    return {sqrt((delta + root) / Scalar(2)), sqrt(std::max(Scalar(0), (delta - root) / Scalar(2)))};
}

// ---------------------------------------------------------------------------
// Local-symplectic standard form

/// Two-mode standard form [[a 1, diag(c_plus, c_minus)], [diag(c_plus, c_minus), b 1]]
/// reached by local symplectic operations, in the units of the input.
/// c_plus >= |c_minus|.
template <typename Scalar = double>
struct StandardForm {
    Scalar a = 0;
    Scalar b = 0;
    Scalar c_plus = 0;
    Scalar c_minus = 0;
};

namespace detail {

template <typename Scalar>
bool isotropic(const Eigen::Matrix<Scalar, 2, 2> &m) {
    return m(0, 1) == Scalar(0) && m(1, 0) == Scalar(0) && m(0, 0) == m(1, 1);
}

// Local symplectic that maps the block m onto sqrt(det m) * identity.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> isotropizer(const Eigen::Matrix<Scalar, 2, 2> &m) {
    using std::sqrt;
    if (isotropic(m)) return Eigen::Matrix<Scalar, 2, 2>::Identity();
    const Eigen::Matrix<Scalar, 2, 2> sym = (m + m.transpose()) / Scalar(2);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, 2, 2>> es(sym);
    return sqrt(sqrt(sym.determinant())) * es.operatorInverseSqrt();
}

}  // namespace detail

template <typename Scalar>
StandardForm<Scalar> standard_form(const CovarianceMatrix<Scalar> &v) {
    using std::abs;
    using std::sqrt;
    require_two_mode(v);
    using Block = Eigen::Matrix<Scalar, 2, 2>;
    const Block alpha = v.block(0, 0);
    const Block beta = v.block(1, 1);
    StandardForm<Scalar> sf;
    sf.a = detail::isotropic(alpha) ? alpha(0, 0) : sqrt(alpha.determinant());
    sf.b = detail::isotropic(beta) ? beta(0, 0) : sqrt(beta.determinant());
    const Block cross = detail::isotropizer(alpha) * v.block(0, 1) * detail::isotropizer(beta).transpose();

    Scalar c1;
    Scalar c2;
    if (cross(0, 1) == Scalar(0) && cross(1, 0) == Scalar(0)) {
        c1 = cross(0, 0);
        c2 = cross(1, 1);
    } else {
        Eigen::JacobiSVD<Block> svd(cross);
        c1 = svd.singularValues()(0);
        c2 = svd.singularValues()(1);
        if (cross.determinant() < Scalar(0)) c2 = -c2;
    }
    // Local rotations by pi/2 (on both modes) swap the entries; a rotation by
    // pi on one mode flips both signs.
    if (abs(c2) > abs(c1)) std::swap(c1, c2);
    if (c1 < Scalar(0)) {
        c1 = -c1;
        c2 = -c2;
    }
    sf.c_plus = c1;
    sf.c_minus = c2;
    return sf;
}

// ---------------------------------------------------------------------------
// Gaussian unitaries

enum class SymplecticKind { Identity, BeamSplitter, SingleModeSqueezer, TwoModeSqueezer, Local, Composite };

template <typename Scalar = double>
class SymplecticOperation {
   public:
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    SymplecticOperation(Matrix matrix, SymplecticKind kind) : matrix_(std::move(matrix)), kind_(kind) {
        if (matrix_.rows() != matrix_.cols() || matrix_.rows() % 2 != 0) {
            throw Error(ErrorCode::DimensionMismatch, "symplectic matrix must be square with even dimension");
        }
        detail::require_finite(matrix_);
        const int n = static_cast<int>(matrix_.rows() / 2);
        const Matrix omega = symplectic_form<Scalar>(n);
        const Scalar scale = std::max(Scalar(1), matrix_.squaredNorm());
        if ((matrix_ * omega * matrix_.transpose() - omega).cwiseAbs().maxCoeff() > Scalar(1e-12) * scale) {
            throw Error(ErrorCode::DomainError, "matrix does not preserve the symplectic form");
        }
    }

    static SymplecticOperation identity(int n_modes) {
        return {Matrix::Identity(2 * n_modes, 2 * n_modes), SymplecticKind::Identity};
    }

    /// Beam splitter mixing `first` and `second` with power coupling `coupling`:
    /// x_first -> sqrt(1-c) x_first + sqrt(c) x_second,
    /// x_second -> -sqrt(c) x_first + sqrt(1-c) x_second.
    static SymplecticOperation beam_splitter(int n_modes, int first, int second, Scalar coupling) {
        using std::sqrt;
        check_mode(n_modes, first);
        check_mode(n_modes, second);
        if (first == second) throw Error(ErrorCode::BadIndex, "beam splitter needs two distinct modes");
        if (!(coupling >= Scalar(0) && coupling <= Scalar(1))) {
            throw Error(ErrorCode::BadCoupling, "beam splitter coupling must lie in [0, 1]");
        }
        Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
        const Scalar t = sqrt(Scalar(1) - coupling);
        const Scalar k = sqrt(coupling);
        for (int q = 0; q < 2; ++q) {
            s(2 * first + q, 2 * first + q) = t;
            s(2 * first + q, 2 * second + q) = k;
            s(2 * second + q, 2 * first + q) = -k;
            s(2 * second + q, 2 * second + q) = t;
        }
        return {std::move(s), SymplecticKind::BeamSplitter};
    }

    /// diag(e^{-r}, e^{r}) on `mode`; r > 0 squeezes q.
    static SymplecticOperation squeezer(int n_modes, int mode, Scalar r) {
        using std::exp;
        check_mode(n_modes, mode);
        Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
        s(2 * mode, 2 * mode) = exp(-r);
        s(2 * mode + 1, 2 * mode + 1) = exp(r);
        return {std::move(s), SymplecticKind::SingleModeSqueezer};
    }

    /// Two-mode squeezer [[cosh s 1, sinh s Z], [sinh s Z, cosh s 1]], Z = diag(1, -1).
    static SymplecticOperation two_mode_squeezer(int n_modes, int first, int second, Scalar strength) {
        using std::cosh;
        using std::sinh;
        check_mode(n_modes, first);
        check_mode(n_modes, second);
        if (first == second) throw Error(ErrorCode::BadIndex, "two-mode squeezer needs two distinct modes");
        Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
        const Scalar ch = cosh(strength);
        const Scalar sh = sinh(strength);
        for (int q = 0; q < 2; ++q) {
            const Scalar sign = q == 0 ? Scalar(1) : Scalar(-1);
            s(2 * first + q, 2 * first + q) = ch;
            s(2 * second + q, 2 * second + q) = ch;
            s(2 * first + q, 2 * second + q) = sign * sh;
            s(2 * second + q, 2 * first + q) = sign * sh;
        }
        return {std::move(s), SymplecticKind::TwoModeSqueezer};
    }

    /// Arbitrary single-mode symplectic (det = 1) acting on `mode`.
    static SymplecticOperation local(int n_modes, int mode, const Eigen::Matrix<Scalar, 2, 2> &block) {
        check_mode(n_modes, mode);
        Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
        s.template block<2, 2>(2 * mode, 2 * mode) = block;
        return {std::move(s), SymplecticKind::Local};
    }

    /// `after` applied following `before`.
    static SymplecticOperation compose(const SymplecticOperation &after, const SymplecticOperation &before) {
        if (after.modes() != before.modes()) {
            throw Error(ErrorCode::DimensionMismatch, "cannot compose operations on different mode counts");
        }
        return {after.matrix_ * before.matrix_, SymplecticKind::Composite};
    }

    int modes() const { return static_cast<int>(matrix_.rows() / 2); }
    const Matrix &matrix() const { return matrix_; }
    SymplecticKind kind() const { return kind_; }

   private:
    static void check_mode(int n_modes, int mode) {
        if (mode < 0 || mode >= n_modes) throw Error(ErrorCode::BadIndex, "mode index out of range");
    }

    Matrix matrix_;
    SymplecticKind kind_;
};

template <typename Scalar>
CovarianceMatrix<Scalar> apply_symplectic(const CovarianceMatrix<Scalar> &v, const SymplecticOperation<Scalar> &s) {
    if (v.modes() != s.modes()) {
        throw Error(ErrorCode::DimensionMismatch, "state has " + std::to_string(v.modes()) +
                                                      " modes, operation acts on " + std::to_string(s.modes()));
    }
    const auto out = s.matrix() * v.matrix() * s.matrix().transpose();
    return CovarianceMatrix<Scalar>(detail::symmetrized<Scalar>(out));
}

// ---------------------------------------------------------------------------
// Composition, reduction, conditioning

/// Direct sum; the modes of `first` come first.
template <typename Scalar>
CovarianceMatrix<Scalar> tensor(const CovarianceMatrix<Scalar> &first, const CovarianceMatrix<Scalar> &second) {
    using Matrix = typename CovarianceMatrix<Scalar>::Matrix;
    const auto n1 = first.matrix().rows();
    const auto n2 = second.matrix().rows();
    Matrix m = Matrix::Zero(n1 + n2, n1 + n2);
    m.topLeftCorner(n1, n1) = first.matrix();
    m.bottomRightCorner(n2, n2) = second.matrix();
    return CovarianceMatrix<Scalar>(std::move(m));
}

/// Principal submatrix on the quadratures of `keep`, in the order given.
template <typename Scalar>
CovarianceMatrix<Scalar> partial_trace(const CovarianceMatrix<Scalar> &v, std::span<const int> keep) {
    using Matrix = typename CovarianceMatrix<Scalar>::Matrix;
    if (keep.empty()) throw Error(ErrorCode::BadIndex, "partial_trace needs at least one kept mode");
    std::vector<int> seen;
    for (int mode : keep) {
        if (mode < 0 || mode >= v.modes()) throw Error(ErrorCode::BadIndex, "mode index out of range");
        if (std::find(seen.begin(), seen.end(), mode) != seen.end()) {
            throw Error(ErrorCode::BadIndex, "duplicate mode index");
        }
        seen.push_back(mode);
    }
    const auto k = static_cast<Eigen::Index>(keep.size());
    Matrix m(2 * k, 2 * k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            m.template block<2, 2>(2 * i, 2 * j) = v.block(keep[i], keep[j]);
        }
    }
    return CovarianceMatrix<Scalar>(std::move(m));
}

template <typename Scalar>
CovarianceMatrix<Scalar> partial_trace(const CovarianceMatrix<Scalar> &v, std::initializer_list<int> keep) {
    return partial_trace(v, std::span<const int>(keep.begin(), keep.size()));
}

/// Covariance of the unmeasured modes after an ideal homodyne measurement of
/// `quadrature` on `measured_mode`:
///   V_rest - C (Pi V_m Pi)^+ C^T,
/// with C the rest-to-measured cross block and ^+ the Moore-Penrose inverse.
template <typename Scalar>
CovarianceMatrix<Scalar> homodyne_condition(const CovarianceMatrix<Scalar> &v, int measured_mode,
                                            Quadrature quadrature) {
    using Matrix = typename CovarianceMatrix<Scalar>::Matrix;
    detail::require_finite(v.matrix());
    if (measured_mode < 0 || measured_mode >= v.modes()) {
        throw Error(ErrorCode::BadIndex, "measured mode out of range");
    }
    const int q = quadrature == Quadrature::Q ? 0 : 1;
    const auto measured = v.block(measured_mode, measured_mode);
    if (!(measured(q, q) > Scalar(0))) {
        throw Error(ErrorCode::SingularMeasurement, "measured quadrature variance is not positive");
    }

    std::vector<int> rest;
    for (int k = 0; k < v.modes(); ++k) {
        if (k != measured_mode) rest.push_back(k);
    }
    const auto n_rest = static_cast<Eigen::Index>(rest.size());
    if (n_rest == 0) return CovarianceMatrix<Scalar>();

    Matrix v_rest(2 * n_rest, 2 * n_rest);
    Matrix cross(2 * n_rest, 2);
    for (Eigen::Index i = 0; i < n_rest; ++i) {
        cross.template block<2, 2>(2 * i, 0) = v.block(rest[i], measured_mode);
        for (Eigen::Index j = 0; j < n_rest; ++j) {
            v_rest.template block<2, 2>(2 * i, 2 * j) = v.block(rest[i], rest[j]);
        }
    }
    Eigen::Matrix<Scalar, 2, 2> projected = Eigen::Matrix<Scalar, 2, 2>::Zero();
    projected(q, q) = measured(q, q);
    const Eigen::Matrix<Scalar, 2, 2> pinv = projected.completeOrthogonalDecomposition().pseudoInverse();
    const Matrix conditioned = v_rest - cross * pinv * cross.transpose();
    return CovarianceMatrix<Scalar>(detail::symmetrized<Scalar>(conditioned));
}

}  // namespace cvcorr

#endif  // CVCORR_SYMPLECTIC_HPP
