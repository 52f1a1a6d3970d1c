// Copyright 2026 The qunc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "qunc/core.hpp"
#include "qunc/matops.hpp"

namespace qunc {

// ---------------------------------------------------------------------------
// State types

/// Trace-one, Hermitian, positive-semidefinite matrix. Validated on construction.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) { validate(); }

    const ComplexMatrix& matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }
    cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

    static DensityMatrix maximally_mixed(Eigen::Index d) {
        return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
    }
    static DensityMatrix diagonal(const RealVector& p) { return DensityMatrix(p.cast<cplx>().asDiagonal()); }

private:
    void validate() const {
        require_square(m_, "density matrix");
        if (!m_.allFinite()) throw InvalidState("non-finite entries");
        if (max_asymmetry(m_) > kTol) throw NotHermitian("density matrix asymmetry " + std::to_string(max_asymmetry(m_)));
        if (std::abs(m_.trace() - 1.0) > kTol) throw InvalidState("trace is not 1");
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> s(0.5 * (m_ + m_.adjoint()), Eigen::EigenvaluesOnly);
        if (s.eigenvalues()(0) < -kTol) throw InvalidState("negative eigenvalue " + std::to_string(s.eigenvalues()(0)));
    }
    ComplexMatrix m_;
};

/// Unit-norm ket.
class StateVector {
public:
    explicit StateVector(ComplexVector v) : v_(std::move(v)) {
        if (v_.size() == 0) throw DimensionError("empty state vector");
        if (std::abs(v_.norm() - 1.0) > kTol) throw InvalidState("state vector not normalized");
    }
    static StateVector normalized(const ComplexVector& v) {
        const double n = v.norm();
        if (n == 0.0) throw InvalidState("cannot normalize the zero vector");
        return StateVector(v / n);
    }
    static StateVector basis(Eigen::Index d, Eigen::Index k) { return StateVector(ComplexVector::Unit(d, k)); }

    const ComplexVector& vector() const { return v_; }
    Eigen::Index dim() const { return v_.size(); }
    ComplexMatrix projector() const { return v_ * v_.adjoint(); }
    DensityMatrix density() const { return DensityMatrix(projector()); }

private:
    ComplexVector v_;
};

struct BlochVector {
    Vec3 r = Vec3::Zero();
    double x() const { return r.x(); }
    double y() const { return r.y(); }
    double z() const { return r.z(); }
    double norm() const { return r.norm(); }
};

// ---------------------------------------------------------------------------
// Fixed operators

namespace pauli {
inline ComplexMatrix I() { return ComplexMatrix::Identity(2, 2); }
inline ComplexMatrix X() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
inline ComplexMatrix Y() {
    ComplexMatrix m(2, 2);
    m << 0, -I_unit, I_unit, 0;
    return m;
}
inline ComplexMatrix Z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}
/// sigma . n
inline ComplexMatrix along(const Vec3& n) { return n.x() * X() + n.y() * Y() + n.z() * Z(); }
}  // namespace pauli

namespace spin1 {
// hbar = 1, basis |m=+1>, |0>, |-1>
inline ComplexMatrix Jx() {
    const double s = 1.0 / std::numbers::sqrt2;
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = s;
    return m;
}
inline ComplexMatrix Jy() {
    const double s = 1.0 / std::numbers::sqrt2;
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    m(0, 1) = m(1, 2) = -I_unit * s;
    m(1, 0) = m(2, 1) = I_unit * s;
    return m;
}
inline ComplexMatrix Jz() {
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    m(0, 0) = 1;
    m(2, 2) = -1;
    return m;
}
}  // namespace spin1

// ---------------------------------------------------------------------------
// Random generation

/// Seeded generator. Parallel Monte Carlo derives per-task streams as seed + index.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double normal() { return normal_(eng_); }
    double uniform() { return uniform_(eng_); }
    cplx complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

inline ComplexVector complex_gaussian_vector(Eigen::Index n, Rng& rng) {
    ComplexVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.complex_normal();
    return v;
}

inline ComplexMatrix ginibre(Eigen::Index d, Rng& rng) {
    ComplexMatrix g(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i) g(i, j) = rng.complex_normal();
    return g;
}

/// Haar-random pure state: normalized complex Gaussian vector.
inline StateVector random_pure(Eigen::Index d, Rng& rng) {
    if (d < 1) throw DimensionError("dimension must be positive");
    return StateVector::normalized(complex_gaussian_vector(d, rng));
}
inline StateVector random_pure(Eigen::Index d, std::uint64_t seed) {
    Rng rng(seed);
    return random_pure(d, rng);
}

/// Hilbert-Schmidt random mixed state G G^dag / tr(G G^dag).
inline DensityMatrix random_mixed(Eigen::Index d, Rng& rng) {
    if (d < 1) throw DimensionError("dimension must be positive");
    const ComplexMatrix g = ginibre(d, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint());
    return DensityMatrix(rho);
}
inline DensityMatrix random_mixed(Eigen::Index d, std::uint64_t seed) {
    Rng rng(seed);
    return random_mixed(d, rng);
}

/// Haar unitary via QR of a Ginibre matrix with the phase correction on R's diagonal.
inline ComplexMatrix random_unitary(Eigen::Index d, Rng& rng) {
    const ComplexMatrix g = ginibre(d, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < d; ++k) {
        const cplx rk = r(k, k);
        const double a = std::abs(rk);
        if (a > 0) q.col(k) *= rk / a;
    }
    return q;
}

/// GUE-style Hermitian observable with O(1) entries.
inline ComplexMatrix random_hermitian(Eigen::Index d, Rng& rng) {
    const ComplexMatrix g = ginibre(d, rng);
    return 0.5 * (g + g.adjoint());
}

inline Vec3 random_unit_vec3(Rng& rng) {
    Vec3 v(rng.normal(), rng.normal(), rng.normal());
    while (v.norm() < 1e-12) v = Vec3(rng.normal(), rng.normal(), rng.normal());
    return v.normalized();
}

// ---------------------------------------------------------------------------
// Operations

/// Hermitian PSD square root: diagonalize, take positive roots, rotate back.
inline ComplexMatrix herm_sqrt(const DensityMatrix& rho) { return herm_fn(rho.matrix(), fn::sqrt()); }

/// Column stacking: |M> with index i + j*d holding M(i, j).
inline ComplexVector vectorize(const ComplexMatrix& m) {
    ComplexVector v(m.size());
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) v(i + j * m.rows()) = m(i, j);
    return v;
}

inline ComplexMatrix unvectorize(const ComplexVector& v, Eigen::Index rows) {
    if (rows <= 0 || v.size() % rows != 0) throw DimensionError("unvectorize: size not divisible by row count");
    const Eigen::Index cols = v.size() / rows;
    ComplexMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = v(i + j * rows);
    return m;
}

inline double purity(const DensityMatrix& rho) { return (rho.matrix() * rho.matrix()).trace().real(); }

/// S(rho) = -Tr rho ln rho (natural log).
inline double von_neumann_entropy(const DensityMatrix& rho) {
    const EigenSystem es = herm_eig(rho.matrix());
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.dim(); ++i) {
        const double p = es.values(i);
        if (p > kClamp) s -= p * std::log(p);
    }
    return s;
}

namespace detail {
/// PSD square root that treats eigenvalues at roundoff level as exact zeros, so a rank-deficient
/// state does not pick up sqrt(eps) ~ 1e-8 spurious weight.
inline ComplexMatrix psd_sqrt_floored(const ComplexMatrix& m) {
    const EigenSystem es = herm_eig(m);
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, es.max());
    RealVector r(es.dim());
    for (Eigen::Index i = 0; i < es.dim(); ++i) r(i) = es.values(i) > floor ? std::sqrt(es.values(i)) : 0.0;
    return es.vectors * r.cast<cplx>().asDiagonal() * es.vectors.adjoint();
}
}  // namespace detail

/// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)) = ||sqrt(sigma) sqrt(rho)||_1, clamped into [0, 1].
inline double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho.dim(), sigma.dim(), "fidelity");
    const ComplexMatrix prod = detail::psd_sqrt_floored(sigma.matrix()) * detail::psd_sqrt_floored(rho.matrix());
    const double f = Eigen::JacobiSVD<ComplexMatrix>(prod).singularValues().sum();
    return std::clamp(f, 0.0, 1.0);
}

inline double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho.dim(), sigma.dim(), "trace_distance");
    const EigenSystem es = herm_eig(rho.matrix() - sigma.matrix());
    return 0.5 * es.values.cwiseAbs().sum();
}

inline double bures_angle(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return std::acos(fidelity(rho, sigma));
}

/// S(rho || sigma) = Tr rho (ln rho - ln sigma); +inf when supp(rho) is not inside supp(sigma).
inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho.dim(), sigma.dim(), "relative_entropy");
    const EigenSystem es = herm_eig(sigma.matrix());
    double cross = 0.0;  // Tr rho ln sigma
    for (Eigen::Index k = 0; k < es.dim(); ++k) {
        const ComplexVector v = es.vectors.col(k);
        const double weight = (v.adjoint() * rho.matrix() * v)(0).real();
        if (es.values(k) <= kClamp) {
            if (weight > kClamp) return std::numeric_limits<double>::infinity();
            continue;
        }
        cross += weight * std::log(es.values(k));
    }
    return -von_neumann_entropy(rho) - cross;
}

// ---------------------------------------------------------------------------
// Qubit Bloch form rho = (I + r.sigma)/2

inline BlochVector bloch_from_qubit(const DensityMatrix& rho) {
    if (rho.dim() != 2) throw DimensionError("Bloch vector needs a qubit, got dim " + std::to_string(rho.dim()));
    const ComplexMatrix& m = rho.matrix();
    return {Vec3((m * pauli::X()).trace().real(), (m * pauli::Y()).trace().real(), (m * pauli::Z()).trace().real())};
}

inline DensityMatrix qubit_from_bloch(const BlochVector& b) {
    if (b.norm() > 1.0 + kTol) throw InvalidState("Bloch vector longer than 1");
    return DensityMatrix(0.5 * (pauli::I() + pauli::along(b.r)));
}

/// Hilbert-Schmidt random qubit (uniform in the Bloch ball).
inline BlochVector random_qubit_bloch(Rng& rng) { return bloch_from_qubit(random_mixed(2, rng)); }

}  // namespace qunc
