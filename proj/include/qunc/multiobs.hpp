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
 * Three-observable sum relations.
 *
 * Side vectors of a parallelo-hexagon ABCDEF (opposite sides equal and parallel):
 *     AB = psi1 = (P + i k1 Q)|psi>,  BC = psi2 = (Q + i k2 R)|psi>,  CD = psi3 = (P + i k3 R)|psi>,
 *     DE = -AB, EF = -BC, FA = -CD,
 * with P, Q, R the centered A, B, C and each k chosen so |psi_i|^2 = dX^2 + dY^2 - |<[X,Y]>|.
 *
 * The provable result is the pairwise sum bound. The two chord identities are evaluated as
 * residuals only; neither holds for every hexagon.
 */

#include <array>
#include <cmath>
#include <optional>

#include "qunc/bounds.hpp"
#include "qunc/states.hpp"

namespace qunc {

struct HexagonVectors {
    ComplexVector psi1, psi2, psi3;
    int k1 = 1, k2 = 1, k3 = 1;
};

namespace detail {
struct Centered3 {
    ComplexMatrix p, q, r;
};
inline Centered3 center3(const DensityMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b,
                         const ComplexMatrix& c) {
    check_observables(rho, a, b);
    check_observables(rho, a, c);
    const ComplexMatrix id = ComplexMatrix::Identity(rho.dim(), rho.dim());
    return {a - expectation(rho, a) * id, b - expectation(rho, b) * id, c - expectation(rho, c) * id};
}
/// k making |(X + i k Y)psi|^2 = dX^2 + dY^2 - |<[X,Y]>|
inline int pair_sign(const DensityMatrix& rho, const ComplexMatrix& x, const ComplexMatrix& y) {
    return commutator_expect_signed(rho, x, y) >= 0.0 ? +1 : -1;
}
}  // namespace detail

inline HexagonVectors hexagon_vectors(const StateVector& psi, const ComplexMatrix& a, const ComplexMatrix& b,
                                      const ComplexMatrix& c) {
    const DensityMatrix rho = psi.density();
    const auto cc = detail::center3(rho, a, b, c);
    HexagonVectors h;
    h.k1 = detail::pair_sign(rho, a, b);
    h.k2 = detail::pair_sign(rho, b, c);
    h.k3 = detail::pair_sign(rho, a, c);
    h.psi1 = (cc.p + I_unit * double(h.k1) * cc.q) * psi.vector();
    h.psi2 = (cc.q + I_unit * double(h.k2) * cc.r) * psi.vector();
    h.psi3 = (cc.p + I_unit * double(h.k3) * cc.r) * psi.vector();
    return h;
}

/// Lower bound on dA^2 + dB^2 + dC^2 from summing the three pairwise relations
///   dX^2 + dY^2 >= |<[X,Y]>| + |<perp|(X + i k Y)|psi>|^2,  perp orthogonal to psi,
/// and halving. Without explicit perps each pair uses its optimum psi_i/|psi_i|.
inline BoundReport pairwise_sum_bound(const StateVector& psi, const ComplexMatrix& a, const ComplexMatrix& b,
                                      const ComplexMatrix& c,
                                      const std::optional<std::array<StateVector, 3>>& perps = std::nullopt) {
    const DensityMatrix rho = psi.density();
    const HexagonVectors h = hexagon_vectors(psi, a, b, c);
    const std::array<const ComplexMatrix*, 3> xs{&a, &b, &a};
    const std::array<const ComplexMatrix*, 3> ys{&b, &c, &c};
    const std::array<int, 3> ks{h.k1, h.k2, h.k3};
    const std::array<const ComplexVector*, 3> sides{&h.psi1, &h.psi2, &h.psi3};

    BoundReport r;
    r.name = "pairwise_sum";
    r.direction = Direction::lower;
    r.target = variance(rho, a) + variance(rho, b) + variance(rho, c);
    double total = 0.0;
    double comm_total = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double comm = commutator_expect(rho, *xs[i], *ys[i]);
        comm_total += comm;
        double term = 0.0;
        if (perps) {
            const ComplexVector& w = (*perps)[i].vector();
            require_same_dim(w.size(), psi.dim(), "pairwise perp");
            const double overlap = std::abs(psi.vector().dot(w));
            if (overlap > 1e-8) throw NotOrthogonal("perp " + std::to_string(i) + " overlaps psi");
            const ComplexMatrix op = *xs[i] + I_unit * double(ks[i]) * *ys[i];
            term = std::norm(w.dot(op * psi.vector()));
        } else {
            term = sides[i]->squaredNorm();
        }
        r.diagnostics["term" + std::to_string(i + 1)] = term;
        total += comm + term;
    }
    r.diagnostics["commutators"] = comm_total;
    r.boundValue = 0.5 * total;
    return r;
}

struct HexagonResidual {
    double lhs = 0.0;  // |AB|^2 + |BC|^2 + |CD|^2
    double rhs = 0.0;
    double residual = 0.0;
};

/// variant 1: (|AD|^2 + |BE|^2 + |CF|^2)/4;  variant 2: (|AC|^2 + |CE|^2 + |EA|^2)/3.
inline HexagonResidual hexagon_identity_residual(const ComplexVector& v1, const ComplexVector& v2,
                                                 const ComplexVector& v3, int variant) {
    HexagonResidual h;
    h.lhs = v1.squaredNorm() + v2.squaredNorm() + v3.squaredNorm();
    if (variant == 1) {
        const ComplexVector ad = v1 + v2 + v3;
        const ComplexVector be = v2 + v3 - v1;
        const ComplexVector cf = v3 - v1 - v2;
        h.rhs = 0.25 * (ad.squaredNorm() + be.squaredNorm() + cf.squaredNorm());
    } else if (variant == 2) {
        const ComplexVector ac = v1 + v2;
        const ComplexVector ce = v3 - v1;
        const ComplexVector ea = -(v2 + v3);
        h.rhs = (ac.squaredNorm() + ce.squaredNorm() + ea.squaredNorm()) / 3.0;
    } else {
        throw ParamError("hexagon variant must be 1 or 2");
    }
    h.residual = std::abs(h.lhs - h.rhs);
    return h;
}

inline HexagonResidual hexagon_identity_check(const StateVector& psi, const ComplexMatrix& a, const ComplexMatrix& b,
                                              const ComplexMatrix& c, int variant) {
    const HexagonVectors h = hexagon_vectors(psi, a, b, c);
    return hexagon_identity_residual(h.psi1, h.psi2, h.psi3, variant);
}

struct LhsDecomposition {
    double sumNorms = 0.0;
    double decompA = 0.0;  // dA^2 + dB^2 + dC^2 - sum |comm|
    double decompB = 0.0;  // sum over pairs of (dX^2 + dY^2 - |comm|)/2
    double algebra = 0.0;  // 2(dA^2 + dB^2 + dC^2) - sum |comm|
    double residualA = 0.0;
    double residualB = 0.0;
    double residualAlgebra = 0.0;
};

inline LhsDecomposition lhs_decomposition_check(const StateVector& psi, const ComplexMatrix& a,
                                                const ComplexMatrix& b, const ComplexMatrix& c) {
    const DensityMatrix rho = psi.density();
    const HexagonVectors h = hexagon_vectors(psi, a, b, c);
    const double va = variance(rho, a), vb = variance(rho, b), vc = variance(rho, c);
    const double cab = commutator_expect(rho, a, b);
    const double cbc = commutator_expect(rho, b, c);
    const double cac = commutator_expect(rho, a, c);
    LhsDecomposition out;
    out.sumNorms = h.psi1.squaredNorm() + h.psi2.squaredNorm() + h.psi3.squaredNorm();
    out.decompA = va + vb + vc - cab - cbc - cac;
    out.decompB = 0.5 * (va + vb - cab) + 0.5 * (va + vc - cac) + 0.5 * (vb + vc - cbc);
    out.algebra = 2.0 * (va + vb + vc) - cab - cbc - cac;
    out.residualA = std::abs(out.sumNorms - out.decompA);
    out.residualB = std::abs(out.sumNorms - out.decompB);
    out.residualAlgebra = std::abs(out.sumNorms - out.algebra);
    return out;
}

}  // namespace qunc
