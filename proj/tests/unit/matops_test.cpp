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


#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qunc/matops.hpp"
#include "qunc/states.hpp"

namespace qunc {
namespace {

// Independent oracles: power iteration for the operator norm, a dense theta sweep for w(T).
double power_iteration_norm(const ComplexMatrix& t, int iters = 3000) {
    ComplexVector v = ComplexVector::Ones(t.cols());
    for (int i = 0; i < iters; ++i) {
        v = t.adjoint() * (t * v);
        v /= v.norm();
    }
    return (t * v).norm();
}

double dense_sweep_radius(const ComplexMatrix& t, int points = 20000) {
    double best = 0.0;
    for (int k = 0; k < points; ++k) {
        const double th = 2.0 * std::numbers::pi * k / points;
        const ComplexMatrix h = std::polar(1.0, th) * t;
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()));
        best = std::max(best, es.eigenvalues().maxCoeff());
    }
    return best;
}

TEST(HermEig, ReconstructsAndSortsAscending) {
    Rng rng(1);
    for (int d = 1; d <= 6; ++d) {
        const ComplexMatrix h = random_hermitian(d, rng);
        const EigenSystem es = herm_eig(h);
        EXPECT_LT((es.reconstruct() - h).norm(), 1e-12);
        for (Eigen::Index i = 1; i < es.dim(); ++i) EXPECT_LE(es.values(i - 1), es.values(i));
    }
}

TEST(HermEig, RejectsNonHermitian) {
    ComplexMatrix t = ComplexMatrix::Zero(2, 2);
    t(0, 1) = 1.0;
    EXPECT_THROW(herm_eig(t), NotHermitian);
    EXPECT_THROW(herm_eig(ComplexMatrix(2, 3)), DimensionError);
}

TEST(HermFn, ExpOfPauliZ) {
    const ComplexMatrix e = herm_fn(pauli::Z(), fn::exp());
    EXPECT_NEAR(e(0, 0).real(), std::exp(1.0), 1e-14);
    EXPECT_NEAR(e(1, 1).real(), std::exp(-1.0), 1e-14);
    EXPECT_NEAR(std::abs(e(0, 1)), 0.0, 1e-15);
}

TEST(HermFn, SqrtSquaresBack) {
    Rng rng(2);
    const ComplexMatrix g = ginibre(4, rng);
    const ComplexMatrix psd = g * g.adjoint();
    const ComplexMatrix r = herm_fn(psd, fn::sqrt());
    EXPECT_LT((r * r - psd).norm(), 1e-11);
}

TEST(HermFn, DomainGuards) {
    EXPECT_THROW(herm_fn(-pauli::I(), fn::sqrt()), DomainError);
    EXPECT_THROW(herm_fn(ComplexMatrix::Zero(2, 2), fn::log()), DomainError);
    // roundoff below zero is clamped rather than rejected
    ComplexMatrix tiny = ComplexMatrix::Zero(2, 2);
    tiny(0, 0) = -1e-14;
    EXPECT_NO_THROW(herm_fn(tiny, fn::sqrt()));
}

TEST(OpNorm, MatchesPowerIteration) {
    Rng rng(3);
    for (int k = 0; k < 30; ++k) {
        const ComplexMatrix t = ginibre(2 + k % 5, rng);
        EXPECT_NEAR(op_norm(t), power_iteration_norm(t), 1e-8);
    }
}

TEST(NumericalRadius, NilpotentJordanBlock) {
    ComplexMatrix t = ComplexMatrix::Zero(2, 2);
    t(0, 1) = 1.0;
    EXPECT_NEAR(numerical_radius(t), 0.5, 1e-8);
}

TEST(NumericalRadius, HermitianIsSpectralRadius) {
    Rng rng(4);
    const ComplexMatrix h = random_hermitian(5, rng);
    EXPECT_NEAR(numerical_radius(h), spectral_radius_hermitian(h), 1e-12);
}

TEST(NumericalRadius, NormalMatrixIsLargestEigenvalueModulus) {
    Rng rng(5);
    const ComplexMatrix u = random_unitary(4, rng);
    ComplexVector ev(4);
    ev << cplx(1, 2), cplx(-3, 0.5), cplx(0, -1), cplx(0.2, 0.1);
    const ComplexMatrix t = u * ev.asDiagonal() * u.adjoint();
    EXPECT_NEAR(numerical_radius(t), std::abs(ev(1)), 1e-8);
}

TEST(NumericalRadius, SandwichAndDenseSweepOn500Matrices) {
    Rng rng(6);
    for (int k = 0; k < 500; ++k) {
        const ComplexMatrix t = ginibre(2 + k % 4, rng);
        const double w = numerical_radius(t);
        const double n = op_norm(t);
        ASSERT_GE(w, n / 2.0 - 1e-9);
        ASSERT_LE(w, n + 1e-9);
        if (k % 25 == 0) EXPECT_NEAR(w, dense_sweep_radius(t), 1e-6);
    }
}

TEST(NumericalRadius, RejectsCoarseGrid) { EXPECT_THROW(numerical_radius(pauli::X(), 16), ParamError); }

TEST(Kron, LiftLeftActsOnColumnStackedVectors) {
    Rng rng(7);
    const ComplexMatrix a = ginibre(3, rng), b = ginibre(3, rng);
    EXPECT_LT((lift_left(a) * vectorize(b) - vectorize(a * b)).norm(), 1e-12);
    EXPECT_EQ(kron(a, b).rows(), 9);
}

}  // namespace
}  // namespace qunc
