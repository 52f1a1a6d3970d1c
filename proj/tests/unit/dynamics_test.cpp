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

#include "qunc/dynamics.hpp"
#include "qunc/experiments.hpp"

namespace qunc {
namespace {

LindbladGenerator random_generator(Eigen::Index d, Rng& rng) {
    LindbladGenerator g;
    g.H = random_hermitian(d, rng);
    for (int k = 0; k < 2; ++k) {
        g.jumpOps.push_back(ginibre(d, rng) / static_cast<double>(d));
        g.rates.push_back(0.2 + rng.uniform());
    }
    return g;
}

TEST(Lindblad, TracelessAndHermitianPreserving) {
    Rng rng(1);
    for (int i = 0; i < 20; ++i) {
        const Eigen::Index d = 2 + i % 3;
        const LindbladGenerator g = random_generator(d, rng);
        const ComplexMatrix out = lindblad_apply(g, random_mixed(d, rng));
        ASSERT_LT(std::abs(out.trace()), 1e-12);
        ASSERT_LT(max_asymmetry(out), 1e-12);
    }
}

TEST(Lindblad, DephasingGenerator) {
    const Scenario sc = scenarios::dephasing(0.5, 0.5);
    const ComplexMatrix out = lindblad_apply(sc.generator, DensityMatrix(sc.rho0));
    // L(rho) = gamma (Z rho Z - rho) = -gamma * (1/2) sigma_x for r = (1/2, 0, 0)
    EXPECT_LT((out + 0.5 * 0.5 * pauli::X()).norm(), 1e-14);
}

TEST(Lindblad, Validation) {
    LindbladGenerator g = LindbladGenerator::zero(2);
    g.jumpOps.push_back(pauli::Z());
    EXPECT_THROW(g.validate(), ConfigError);
    g.rates.push_back(-1.0);
    EXPECT_THROW(g.validate(), ConfigError);
    g.rates[0] = 1.0;
    g.H(0, 1) = 1.0;
    EXPECT_THROW(g.validate(), NotHermitian);
}

TEST(Evolve, DephasingMatchesClosedForm) {
    const double gamma = 0.7;
    const Scenario sc = scenarios::dephasing(gamma, 0.5);
    const Trajectory t = evolve(DensityMatrix(sc.rho0), sc.generator, 1.5, 0.01);
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double rx = bloch_from_qubit(t.states[k]).x();
        ASSERT_NEAR(rx, 0.5 * std::exp(-2.0 * gamma * t.times[k]), 1e-6);
    }
    EXPECT_EQ(t.projections, 0);
}

TEST(Evolve, HalvingStepChangesEndpointBelow1e8) {
    Rng rng(2);
    const LindbladGenerator g = random_generator(3, rng);
    const DensityMatrix rho0 = random_mixed(3, rng);
    const Trajectory coarse = evolve(rho0, g, 1.0, 0.01);
    const Trajectory fine = evolve(rho0, g, 1.0, 0.005);
    EXPECT_LT((coarse.states.back().matrix() - fine.states.back().matrix()).norm(), 1e-8);
    EXPECT_NEAR(coarse.times.back(), 1.0, 1e-12);
}

TEST(Evolve, ParameterChecks) {
    const Scenario sc = scenarios::dephasing();
    const DensityMatrix rho0(sc.rho0);
    EXPECT_THROW(evolve(rho0, sc.generator, 1.0, 0.02), ParamError);
    EXPECT_THROW(evolve(rho0, sc.generator, 0.0, 0.001), ParamError);
    EXPECT_THROW(evolve(DensityMatrix::maximally_mixed(3), sc.generator, 1.0, 0.01), DimensionError);
}

TEST(Evolve, StiffGeneratorDiverges) {
    LindbladGenerator g = LindbladGenerator::zero(2);
    ComplexMatrix lower = ComplexMatrix::Zero(2, 2);
    lower(0, 1) = 1.0;
    g.jumpOps.push_back(lower);
    g.rates.push_back(1e4);
    EXPECT_THROW(evolve(DensityMatrix::maximally_mixed(2), g, 1.0, 0.01), IntegrationDiverged);
}

TEST(SpeedLimit, RateOfQuadraticIsExact) {
    Trajectory t;
    for (int i = 0; i <= 10; ++i) {
        const double x = 0.1 * i;
        t.times.push_back(x);
        t.sinSqBures.push_back(x * x);
    }
    const auto rate = sin2_bures_rate(t);
    for (int i = 0; i <= 10; ++i) EXPECT_NEAR(rate[i], 0.2 * i, 1e-12);
}

// Lambda_reverse <= S(rho0) - ln d <= 0 for any generator: ln Tr e^{-X} >= ln d for traceless X.
TEST(SpeedLimit, ReverseRateNeverPositive) {
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        const Eigen::Index d = 2 + i % 3;
        const DensityMatrix rho0 = random_mixed(d, rng);
        const Trajectory t = evolve(rho0, random_generator(d, rng), 1.0, 0.01);
        for (int branch : {+1, -1}) {
            const double lam = lambda_reverse(t, rho0, branch);
            ASSERT_LE(lam, von_neumann_entropy(rho0) - std::log(static_cast<double>(d)) + 1e-12);
        }
    }
}

TEST(SpeedLimit, DephasingReport) {
    const ScenarioOutcome o = run_scenario(scenarios::dephasing());
    EXPECT_TRUE(o.report.assumptions.passes());
    EXPECT_EQ(o.report.assumptions.sign, -1);
    EXPECT_LT(o.report.lambdaReverse, 0.0);
    EXPECT_TRUE(o.report.integratedChecked);
    EXPECT_TRUE(o.report.integratedHolds);
    EXPECT_FALSE(o.report.timeBoundValid);
    EXPECT_TRUE(o.report.pointwise.checked);
    EXPECT_LT(o.report.pointwise.maxViolation, 1e-6);
}

TEST(SpeedLimit, RabiIsFlaggedNonMonotone) {
    const ScenarioOutcome o = run_scenario(scenarios::rabi());
    EXPECT_FALSE(o.report.assumptions.monotone);
    EXPECT_FALSE(o.report.pointwise.checked);
    EXPECT_FALSE(o.report.integratedChecked);
    EXPECT_FALSE(o.report.reason.empty());
}

TEST(SpeedLimit, FixedPointAndZeroGeneratorAreDegenerate) {
    for (const Scenario& sc : {scenarios::fixed_point(), scenarios::zero_generator()}) {
        const ScenarioOutcome o = run_scenario(sc);
        EXPECT_TRUE(o.report.assumptions.degenerate) << sc.name;
        EXPECT_NEAR(o.report.sinSqFinal, 0.0, 1e-12) << sc.name;
        EXPECT_NEAR(o.report.lambdaReverse, o.report.entropy0 - o.report.logDim, 1e-12) << sc.name;
    }
}

TEST(SpeedLimit, BranchValidation) {
    const Scenario sc = scenarios::dephasing();
    const Trajectory t = evolve(DensityMatrix(sc.rho0), sc.generator, sc.tau, sc.dt);
    EXPECT_THROW(lambda_reverse(t, DensityMatrix(sc.rho0), 0), ParamError);
    const PointwiseCheck wrong = pointwise_pb_check(t, DensityMatrix(sc.rho0), +1);
    EXPECT_FALSE(wrong.checked);
}

}  // namespace
}  // namespace qunc
