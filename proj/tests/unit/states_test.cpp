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

#include "qunc/states.hpp"

namespace qunc {
namespace {

TEST(DensityMatrix, Validation) {
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    EXPECT_THROW(DensityMatrix{bad}, InvalidState);  // trace 2
    bad = ComplexMatrix::Zero(2, 2);
    bad(0, 0) = 1.5;
    bad(1, 1) = -0.5;
    EXPECT_THROW(DensityMatrix{bad}, InvalidState);  // negative eigenvalue
    bad = 0.5 * ComplexMatrix::Identity(2, 2);
    bad(0, 1) = 0.1;
    EXPECT_THROW(DensityMatrix{bad}, NotHermitian);
    EXPECT_NO_THROW(DensityMatrix::maximally_mixed(3));
}

TEST(RandomStates, AreValid) {
    Rng rng(1);
    for (int d = 2; d <= 5; ++d) {
        const StateVector psi = random_pure(d, rng);
        EXPECT_NEAR(psi.vector().norm(), 1.0, 1e-12);
        const DensityMatrix rho = random_mixed(d, rng);
        EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
        EXPECT_GE(herm_eig(rho.matrix()).min(), -1e-12);
        const ComplexMatrix u = random_unitary(d, rng);
        EXPECT_LT((u.adjoint() * u - ComplexMatrix::Identity(d, d)).norm(), 1e-12);
    }
}

TEST(RandomStates, SeedDeterminism) {
    EXPECT_EQ(random_mixed(3, 42).matrix(), random_mixed(3, 42).matrix());
    EXPECT_NE(random_mixed(3, 42).matrix(), random_mixed(3, 43).matrix());
}

// Hilbert-Schmidt qubits fill the Bloch ball uniformly: E|r|^2 = 3/5, E Tr rho^2 = 2d/(d^2+1) = 0.8.
TEST(RandomStates, HilbertSchmidtMeanPurity) {
    Rng rng(2);
    const int n = 20000;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += purity(random_mixed(2, rng));
    EXPECT_NEAR(acc / n, 0.8, 0.02);
}

TEST(Fidelity, BasicProperties) {
    Rng rng(3);
    const DensityMatrix rho = random_mixed(3, rng), sigma = random_mixed(3, rng);
    EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-10);
    EXPECT_NEAR(fidelity(rho, sigma), fidelity(sigma, rho), 1e-10);
    const StateVector a = random_pure(3, rng), b = random_pure(3, rng);
    EXPECT_NEAR(fidelity(a.density(), b.density()), std::abs(a.vector().dot(b.vector())), 1e-9);
    // pure vs mixed: F^2 = <psi|sigma|psi>
    const double f = fidelity(a.density(), sigma);
    EXPECT_NEAR(f * f, (a.vector().adjoint() * sigma.matrix() * a.vector())(0).real(), 1e-12);
}

TEST(Fidelity, FuchsVanDeGraafAndOverlapBound) {
    Rng rng(4);
    for (int i = 0; i < 300; ++i) {
        const Eigen::Index d = 2 + i % 3;
        const DensityMatrix rho = random_mixed(d, rng), sigma = random_mixed(d, rng);
        const double f = fidelity(rho, sigma);
        const double t = trace_distance(rho, sigma);
        ASSERT_LE(1.0 - f, t + 1e-9);
        ASSERT_LE(t, std::sqrt(1.0 - f * f) + 1e-9);
        ASSERT_GE(f * f + 1e-9, (rho.matrix() * sigma.matrix()).trace().real());
    }
}

TEST(Entropy, MaximallyMixedAndPure) {
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(4)), std::log(4.0), 1e-12);
    EXPECT_NEAR(von_neumann_entropy(random_pure(3, 5).density()), 0.0, 1e-10);
}

TEST(RelativeEntropy, SupportViolationIsInfinite) {
    RealVector p(2), q(2);
    p << 0.75, 0.25;
    q << 1.0, 0.0;
    EXPECT_TRUE(std::isinf(relative_entropy(DensityMatrix::diagonal(p), DensityMatrix::diagonal(q))));
    EXPECT_NEAR(relative_entropy(DensityMatrix::diagonal(q), DensityMatrix::diagonal(p)), -std::log(0.75), 1e-12);
}

TEST(Vectorize, InnerProductAndRoundTrip) {
    Rng rng(6);
    const ComplexMatrix a = ginibre(3, rng), b = ginibre(3, rng);
    EXPECT_LT(std::abs((a.adjoint() * b).trace() - vectorize(a).dot(vectorize(b))), 1e-12);
    EXPECT_EQ(unvectorize(vectorize(a), 3), a);
    EXPECT_EQ(vectorize(a)(1 + 2 * 3), a(1, 2));
    EXPECT_THROW(unvectorize(vectorize(a), 2), DimensionError);
}

TEST(Bloch, RoundTripAndErrors) {
    const BlochVector r{Vec3(0.1, -0.4, 0.3)};
    const BlochVector back = bloch_from_qubit(qubit_from_bloch(r));
    EXPECT_LT((back.r - r.r).norm(), 1e-14);
    EXPECT_THROW(bloch_from_qubit(DensityMatrix::maximally_mixed(3)), DimensionError);
    EXPECT_THROW(qubit_from_bloch({Vec3(1.0, 1.0, 0.0)}), InvalidState);
}

TEST(Spin1, CommutationRelations) {
    const ComplexMatrix jx = spin1::Jx(), jy = spin1::Jy(), jz = spin1::Jz();
    EXPECT_LT((commutator(jx, jy) - I_unit * jz).norm(), 1e-14);
    EXPECT_LT((jx * jx + jy * jy + jz * jz - 2.0 * ComplexMatrix::Identity(3, 3)).norm(), 1e-14);
}

}  // namespace
}  // namespace qunc
