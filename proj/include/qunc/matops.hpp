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

/*
 * Dense complex-matrix kernel.
 *
 *   herm_eig(H)            ascending eigenvalues, orthonormal eigenvectors
 *   herm_fn(H, f)          V f(Lambda) V^dag, with a domain guard on f
 *   numerical_radius(T)    w(T) = max_theta lambda_max(Re(e^{i theta} T))
 *   op_norm(T)             largest singular value
 *
 * Desk scale only (d up to ~64). Everything here is a pure function.
 */

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "qunc/core.hpp"

namespace qunc {

struct EigenSystem {
    RealVector values;     // ascending
    ComplexMatrix vectors; // columns

    double min() const { return values(0); }
    double max() const { return values(values.size() - 1); }
    Eigen::Index dim() const { return values.size(); }

    ComplexMatrix reconstruct() const { return vectors * values.cast<cplx>().asDiagonal() * vectors.adjoint(); }
};

inline EigenSystem herm_eig(const ComplexMatrix& h) {
    require_square(h, "herm_eig input");
    if (!is_hermitian(h))
        throw NotHermitian("max |H - H^dag| = " + std::to_string(max_asymmetry(h)));
    // symmetrize away the sub-tolerance noise so both triangles agree
    const ComplexMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) throw Error("herm_eig: eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

/// A real scalar function together with the part of the real line it accepts.
struct ScalarFn {
    std::function<double(double)> f;
    double lower = -std::numeric_limits<double>::infinity();
    bool lower_open = false;
    std::string name = "f";
};

namespace fn {
inline ScalarFn identity() { return {[](double x) { return x; }, -std::numeric_limits<double>::infinity(), false, "id"}; }
inline ScalarFn exp() { return {[](double x) { return std::exp(x); }, -std::numeric_limits<double>::infinity(), false, "exp"}; }
inline ScalarFn neg_exp() { return {[](double x) { return std::exp(-x); }, -std::numeric_limits<double>::infinity(), false, "exp(-x)"}; }
inline ScalarFn sqrt() { return {[](double x) { return std::sqrt(x); }, 0.0, false, "sqrt"}; }
inline ScalarFn log() { return {[](double x) { return std::log(x); }, 0.0, true, "log"}; }
inline ScalarFn power(double p) {
    return {[p](double x) { return std::pow(x, p); }, 0.0, false, "pow"};
}
}  // namespace fn

/// Applies f to the eigenvalues of H. Eigenvalues within kClamp below the lower end of
/// f's domain are snapped onto it; anything further out is a DomainError.
inline ComplexMatrix herm_fn(const EigenSystem& es, const ScalarFn& f) {
    RealVector mapped(es.dim());
    for (Eigen::Index i = 0; i < es.dim(); ++i) {
        double x = es.values(i);
        if (std::isfinite(f.lower)) {
            if (x < f.lower - kClamp)
                throw DomainError(f.name + ": eigenvalue " + std::to_string(x) + " below domain");
            x = std::max(x, f.lower);
            if (f.lower_open && x <= f.lower)
                throw DomainError(f.name + ": eigenvalue " + std::to_string(x) + " on open domain boundary");
        }
        mapped(i) = f.f(x);
    }
    return es.vectors * mapped.cast<cplx>().asDiagonal() * es.vectors.adjoint();
}

inline ComplexMatrix herm_fn(const ComplexMatrix& h, const ScalarFn& f) { return herm_fn(herm_eig(h), f); }

/// Largest singular value, from the top eigenvalue of T^dag T.
inline double op_norm(const ComplexMatrix& t) {
    require_square(t, "op_norm input");
    const double top = herm_eig(t.adjoint() * t).max();
    return std::sqrt(std::max(top, 0.0));
}

inline double spectral_radius_hermitian(const ComplexMatrix& h) {
    const EigenSystem es = herm_eig(h);
    return std::max(std::abs(es.min()), std::abs(es.max()));
}

namespace detail {
inline double real_part_top(const ComplexMatrix& t, double theta) {
    const cplx phase = std::polar(1.0, theta);
    const ComplexMatrix re = 0.5 * (phase * t + std::conj(phase) * t.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(re, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(re.rows() - 1);
}
}  // namespace detail

inline constexpr int kNumericalRadiusGrid = 512;

/// Numerical radius w(T) = sup_{|phi|=1} |<phi|T|phi>|.
///
/// Uses w(T) = max_theta lambda_max((e^{i theta} T + e^{-i theta} T^dag)/2): a uniform
/// grid over [0, 2 pi) locates the best cell, then golden-section search refines theta
/// to 1e-8 inside the two neighbouring cells. Hermitian T short-circuits to the
/// spectral radius.
inline double numerical_radius(const ComplexMatrix& t, int samples = kNumericalRadiusGrid) {
    require_square(t, "numerical_radius input");
    if (samples < 64) throw ParamError("numerical_radius needs at least 64 samples");
    if (is_hermitian(t)) return spectral_radius_hermitian(t);

    const double step = 2.0 * std::numbers::pi / samples;
    int best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
        const double v = detail::real_part_top(t, k * step);
        if (v > best_val) {
            best_val = v;
            best = k;
        }
    }

    constexpr double inv_phi = 0.6180339887498949;
    double lo = (best - 1) * step;
    double hi = (best + 1) * step;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = detail::real_part_top(t, x1);
    double f2 = detail::real_part_top(t, x2);
    while (hi - lo > 1e-8) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = detail::real_part_top(t, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = detail::real_part_top(t, x1);
        }
    }
    return std::max({best_val, f1, f2});
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// I (x) M on C^d (x) C^d, the action of left multiplication on column-stacked vectors.
inline ComplexMatrix lift_left(const ComplexMatrix& m) {
    return kron(ComplexMatrix::Identity(m.rows(), m.rows()), m);
}

}  // namespace qunc
