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

// Builds a pure state and observables whose uncertainty matrix is a prescribed K, with psi and
// phi placed on the equal-weight extremal pair of K at a prescribed overlap.
//
//   X = U sqrt(K), U unitary with U (sqrt(K) psi / |.|) = chi (chi orthogonal to psi) and U e3 = psi.
//   C = (X + X^dag)/2, D = i (X - X^dag)/2, so C - iD = X, <C> = <D> = 0 and K_+ = X^dag X = K.
//   <psi|K_-|psi> = <e3|K|e3> = lambda3 > <psi|K|psi>, so K_+ is strictly the canonical sign.

#include "qunc/bounds.hpp"
#include "qunc/states.hpp"

namespace qunc::testing {

struct TightInstance {
    ComplexMatrix k;
    ComplexMatrix a, b;
    StateVector psi = StateVector::basis(2, 0);
    StateVector phi = StateVector::basis(2, 0);
    double m = 0.0;  // cos(theta) = |<psi|phi>|
};

/// Orthonormal completion of the given columns (Gram-Schmidt against the identity).
inline ComplexMatrix complete_basis(const ComplexMatrix& cols) {
    const Eigen::Index d = cols.rows();
    ComplexMatrix q(d, d);
    Eigen::Index n = 0;
    auto push = [&](ComplexVector v) {
        for (Eigen::Index j = 0; j < n; ++j) v -= q.col(j) * q.col(j).dot(v);
        const double nv = v.norm();
        if (nv < 1e-8) return;
        q.col(n++) = v / nv;
    };
    for (Eigen::Index j = 0; j < cols.cols(); ++j) push(cols.col(j));
    for (Eigen::Index j = 0; j < d && n < d; ++j) push(ComplexVector::Unit(d, j));
    return q;
}

inline TightInstance tight_instance(Eigen::Index d, Rng& rng) {
    const double lmin = 0.05 + rng.uniform();
    const double lmax = lmin + 0.2 + 2.0 * rng.uniform();
    const double m = 0.05 + 0.9 * rng.uniform();
    const double q = 0.5 * ((1.0 + m) * lmax + (1.0 - m) * lmin);

    RealVector spec(d);
    spec(0) = lmin;
    spec(d - 1) = lmax;
    spec(1) = q + (lmax - q) * (0.05 + 0.95 * rng.uniform());  // lambda3
    for (Eigen::Index i = 2; i < d - 1; ++i) spec(i) = lmin + (lmax - lmin) * rng.uniform();
    const ComplexMatrix v = random_unitary(d, rng);

    TightInstance t;
    t.m = m;
    t.k = v * spec.cast<cplx>().asDiagonal() * v.adjoint();
    const ComplexVector vmin = v.col(0), vmax = v.col(d - 1), e3 = v.col(1);
    const ComplexVector psi = (std::sqrt(1.0 + m) * vmax - std::sqrt(1.0 - m) * vmin) / std::sqrt(2.0);
    const ComplexVector phi = (std::sqrt(1.0 + m) * vmax + std::sqrt(1.0 - m) * vmin) / std::sqrt(2.0);
    const ComplexVector chi = (std::sqrt(1.0 - m) * vmax + std::sqrt(1.0 + m) * vmin) / std::sqrt(2.0);

    const ComplexMatrix sqrt_k = v * spec.cwiseSqrt().cast<cplx>().asDiagonal() * v.adjoint();
    const ComplexVector u = (sqrt_k * psi).normalized();
    ComplexMatrix from(d, 2), to(d, 2);
    from << u, e3;
    to << chi, psi;
    const ComplexMatrix bf = complete_basis(from);
    const ComplexMatrix bt = complete_basis(to);
    const ComplexMatrix x = bt * bf.adjoint() * sqrt_k;

    t.a = 0.5 * (x + x.adjoint());
    t.b = I_unit * 0.5 * (x - x.adjoint());
    t.psi = StateVector::normalized(psi);
    t.phi = StateVector::normalized(phi);
    return t;
}

}  // namespace qunc::testing
