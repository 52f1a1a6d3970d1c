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

// Experiment drivers behind the command-line front end: figure tables, the randomized
// inequality audit, hexagon residual tables and bundled dynamics scenarios.

#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "qunc/bounds.hpp"
#include "qunc/dynamics.hpp"
#include "qunc/multiobs.hpp"
#include "qunc/qubitgeo.hpp"
#include "qunc/reverse.hpp"
#include "qunc/states.hpp"

namespace qunc {

// ---------------------------------------------------------------------------
// Qutrit family rho = p|psi><psi| + (1-p) I/3, |psi> = (|0>+|1>+|2>)/sqrt3, observables Jx, Jy

inline DensityMatrix qutrit_family_state(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParamError("p must lie in [0, 1]");
    const ComplexVector psi = ComplexVector::Ones(3) / std::sqrt(3.0);
    ComplexMatrix rho = p * psi * psi.adjoint() + (1.0 - p) / 3.0 * ComplexMatrix::Identity(3, 3);
    return DensityMatrix(rho);
}

struct Fig1Row {
    double p = 0.0;
    double sumVariances = 0.0;
    double robertson = 0.0;
    double theorem2 = 0.0;
    double theorem4 = 0.0;
};

inline Fig1Row fig1_row(double p) {
    const DensityMatrix rho = qutrit_family_state(p);
    const ComplexMatrix jx = spin1::Jx();
    const ComplexMatrix jy = spin1::Jy();
    Fig1Row row;
    row.p = p;
    row.sumVariances = sum_variances(rho, jx, jy);
    row.robertson = robertson_sum_bound(rho, jx, jy).boundValue;
    row.theorem2 = theorem2_pb_bound(rho, jx, jy).boundValue;
    row.theorem4 = theorem4_fidelity_bound(rho, jx, jy).boundValue;
    return row;
}

inline std::vector<Fig1Row> fig1_table(const std::vector<double>& grid) {
    if (grid.empty()) throw ParamError("p grid is empty");
    std::vector<Fig1Row> rows;
    rows.reserve(grid.size());
    for (double p : grid) rows.push_back(fig1_row(p));
    return rows;
}

inline std::vector<double> uniform_grid(double lo, double hi, int points) {
    if (points < 1) throw ParamError("grid needs at least one point");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) g[i] = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
    return g;
}

// ---------------------------------------------------------------------------
// Randomized audit

struct Instance {
    int index = 0;
    Eigen::Index dim = 2;
    DensityMatrix rho = DensityMatrix::maximally_mixed(2);
    StateVector psi = StateVector::basis(2, 0);
    ComplexMatrix a, b, c;
};

/// Instance i uses its own stream seeded with seed + i, dimension dims[i % dims.size()].
inline Instance make_instance(int index, const std::vector<int>& dims, std::uint64_t seed) {
    Rng rng(seed + static_cast<std::uint64_t>(index));
    Instance in;
    in.index = index;
    in.dim = dims[static_cast<std::size_t>(index) % dims.size()];
    in.rho = random_mixed(in.dim, rng);
    in.psi = random_pure(in.dim, rng);
    in.a = random_hermitian(in.dim, rng);
    in.b = random_hermitian(in.dim, rng);
    in.c = random_hermitian(in.dim, rng);
    return in;
}

struct FamilyResult {
    std::string name;
    bool asserted = true;
    long checked = 0;
    long violations = 0;
    double worst = -std::numeric_limits<double>::infinity();  // max signed violation; <= tolerance passes
    double tolerance = 0.0;
    std::vector<int> counterexamples;  // instance indices, first few only

    bool passes() const { return !asserted || violations == 0; }
    void record(int index, double violation, std::size_t keep = 5) {
        ++checked;
        worst = std::max(worst, violation);
        if (violation > tolerance) {
            ++violations;
            if (counterexamples.size() < keep) counterexamples.push_back(index);
        }
    }
};

struct AuditConfig {
    std::vector<int> dims{2, 3, 4};
    int samples = 1000;
    std::uint64_t seed = 1;
    int theorem3Trials = 8;
};

struct AuditResult {
    AuditConfig config;
    std::vector<FamilyResult> families;
    bool passes() const {
        for (const auto& f : families)
            if (!f.passes()) return false;
        return true;
    }
    const FamilyResult& family(const std::string& name) const {
        for (const auto& f : families)
            if (f.name == name) return f;
        throw ParamError("no audit family " + name);
    }
};

/// Runs every inequality family over `samples` random instances. Asserted families must show
/// zero violations; diagnostic families only record counterexamples.
inline AuditResult run_audit(const AuditConfig& cfg) {
    if (cfg.dims.empty()) throw ParamError("no dimensions given");
    for (int d : cfg.dims)
        if (d < 2) throw ParamError("dimension must be >= 2, got " + std::to_string(d));
    if (cfg.samples < 1) throw ParamError("samples must be >= 1");

    AuditResult res;
    res.config = cfg;
    auto fam = [&](std::string name, double tol, bool asserted = true) -> std::size_t {
        FamilyResult f;
        f.name = std::move(name);
        f.tolerance = tol;
        f.asserted = asserted;
        res.families.push_back(f);
        return res.families.size() - 1;
    };
    const auto eq2 = fam("uncertainty_equality_residual", 1e-10);
    const auto rob = fam("robertson_le_sum", kBoundSlack);
    const auto pb = fam("theorem2_le_sum", kBoundSlack);
    const auto t1r = fam("theorem1_random_perp_le_sum", kBoundSlack);
    const auto t1o = fam("theorem1_optimal_eq_sum", 1e-9);
    const auto t1s = fam("theorem1_shift_invariance", 1e-10);
    const auto t3 = fam("theorem3_random_phi_le_sum", kBoundSlack);
    const auto t3c2 = fam("theorem3_cos2_between", kBoundSlack);
    const auto t3m = fam("theorem3_mixed_le_sum", kBoundSlack);
    const auto t4 = fam("theorem4_ge_sum", kBoundSlack);
    const auto t4t = fam("theorem4_tight_when_sigma_pure", 1e-9);
    const auto relent = fam("theorem4_relative_entropy_form", kBoundSlack, false);
    const auto nr = fam("numrad_ge_sum", kBoundSlack);
    const auto berg = fam("berger_ge_sum", kBoundSlack);
    const auto kit = fam("kittaneh_ge_sum", kBoundSlack);
    const auto ek = fam("elhaddad_kittaneh_ge_sum", kBoundSlack);
    const auto nrc = fam("numrad_consistent_ge_sum", kBoundSlack);
    const auto fvdg = fam("fuchs_van_de_graaf", 1e-9);
    const auto fov = fam("fidelity_sq_ge_overlap", 1e-9);
    const auto wr = fam("numerical_radius_two_sided", 1e-9);
    const auto vec = fam("vectorization_inner_product", 1e-12);
    const auto pair = fam("pairwise_sum_le_sum", kBoundSlack);
    const auto hexs = fam("hexagon_sign_choice", 1e-10);
    const auto qp = fam("qubit_purity_closed_form", 1e-10);
    const auto conc = fam("concurrence_identity_printed", 1e-10, false);

    for (int i = 0; i < cfg.samples; ++i) {
        const Instance in = make_instance(i, cfg.dims, cfg.seed);
        Rng rng(cfg.seed + 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(i));
        const double sum = sum_variances(in.rho, in.a, in.b);
        auto& F = res.families;

        F[eq2].record(i, uncertainty_equality_residual(in.rho, in.a, in.b));
        F[rob].record(i, robertson_sum_bound(in.rho, in.a, in.b).violation());
        F[pb].record(i, theorem2_pb_bound(in.rho, in.a, in.b).violation());

        const StateVector perp = random_perp(in.rho, rng);
        const BoundReport t1 = theorem1_bound(in.rho, in.a, in.b, perp);
        F[t1r].record(i, t1.violation());
        F[t1o].record(i, std::abs(theorem1_bound(in.rho, in.a, in.b).boundValue - sum));
        const ComplexMatrix id = ComplexMatrix::Identity(in.dim, in.dim);
        const double shift_a = 2.0 * rng.normal();
        const double shift_b = 2.0 * rng.normal();
        const BoundReport t1shift = theorem1_bound(in.rho, in.a + shift_a * id, in.b + shift_b * id, perp);
        F[t1s].record(i, std::abs(t1shift.boundValue - t1.boundValue));

        const StateVector phi = random_pure(in.dim, rng);
        const BoundReport t3r = theorem3_bh_bound(in.psi, in.a, in.b, phi);
        if (t3r.valid) {
            F[t3].record(i, t3r.violation());
            const double c2 = t3r.diagnostics.at("bound_cos2");
            F[t3c2].record(i, std::max(t3r.boundValue - c2, c2 - t3r.target));
        }
        const StateVector phi_mixed = random_pure(in.dim * in.dim, rng);
        const BoundReport t3mix = theorem3_bh_bound(in.rho, in.a, in.b, phi_mixed);
        if (t3mix.valid) F[t3m].record(i, std::max(t3mix.violation(), t3mix.diagnostics.at("bound_cos2") - sum));

        const ReverseReport r4 = theorem4_fidelity_bound(in.rho, in.a, in.b);
        F[t4].record(i, r4.violation());
        if (r4.diagnostics.at("sigma_purity") > 1.0 - 1e-12)
            F[t4t].record(i, std::abs(r4.boundValue - r4.target));
        F[relent].record(i, relent_counterexample(r4) ? 1.0 : -1.0);

        F[nr].record(i, numrad_reverse_bound(in.psi, in.a, in.b).violation());
        F[berg].record(i, berger_bound(in.psi, in.a, in.b).violation());
        const ReverseReport rk = kittaneh_bound(in.psi, in.a, in.b);
        F[kit].record(i, rk.violation());
        F[ek].record(i, elhaddad_kittaneh_bound(in.psi, in.a, in.b, 0.5, 1.0 + 2.0 * rng.uniform()).violation());
        F[nrc].record(i, rk.target - rk.diagnostics.at("consistent_bound"));

        const DensityMatrix sigma = random_mixed(in.dim, rng);
        const double f = fidelity(in.rho, sigma);
        const double dtr = trace_distance(in.rho, sigma);
        F[fvdg].record(i, std::max((1.0 - f) - dtr, dtr - std::sqrt(std::max(0.0, 1.0 - f * f))));
        F[fov].record(i, (in.rho.matrix() * sigma.matrix()).trace().real() - f * f);

        const ComplexMatrix t = ginibre(std::min<Eigen::Index>(in.dim + 1, 5), rng);
        const double w = numerical_radius(t);
        const double nt = op_norm(t);
        F[wr].record(i, std::max(nt / 2.0 - w, w - nt));

        const ComplexMatrix m1 = ginibre(3, rng), m2 = ginibre(3, rng);
        F[vec].record(i, std::abs((m1.adjoint() * m2).trace() - vectorize(m1).dot(vectorize(m2))));

        const BoundReport pw = pairwise_sum_bound(in.psi, in.a, in.b, in.c);
        F[pair].record(i, pw.violation());
        const HexagonVectors hv = hexagon_vectors(in.psi, in.a, in.b, in.c);
        const DensityMatrix pr = in.psi.density();
        F[hexs].record(i, std::abs(hv.psi1.squaredNorm() - (sum_variances(pr, in.a, in.b) -
                                                            commutator_expect(pr, in.a, in.b))));

        const BlochVector r = random_qubit_bloch(rng);
        F[qp].record(i, normalized_K_bloch(r, random_unit_vec3(rng), random_unit_vec3(rng)).crossCheck);
        BlochVector real_r = r;
        real_r.r.y() = 0.0;
        F[conc].record(i, concurrence_identity_check(real_r).residual);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Hexagon residual table

struct HexagonRow {
    int index = 0;
    Eigen::Index dim = 3;
    double variant1 = 0.0;
    double variant2 = 0.0;
    double sumNorms = 0.0;
    double residualA = 0.0;
    double residualB = 0.0;
    double residualAlgebra = 0.0;
    double pairwiseBound = 0.0;
    double sumVariances = 0.0;
};

inline std::vector<HexagonRow> hexagon_table(int samples, std::uint64_t seed, const std::vector<int>& dims = {3, 4}) {
    if (samples < 1) throw ParamError("samples must be >= 1");
    std::vector<HexagonRow> rows;
    rows.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        const Instance in = make_instance(i, dims, seed);
        HexagonRow row;
        row.index = i;
        row.dim = in.dim;
        row.variant1 = hexagon_identity_check(in.psi, in.a, in.b, in.c, 1).residual;
        row.variant2 = hexagon_identity_check(in.psi, in.a, in.b, in.c, 2).residual;
        const LhsDecomposition lhs = lhs_decomposition_check(in.psi, in.a, in.b, in.c);
        row.sumNorms = lhs.sumNorms;
        row.residualA = lhs.residualA;
        row.residualB = lhs.residualB;
        row.residualAlgebra = lhs.residualAlgebra;
        const BoundReport pw = pairwise_sum_bound(in.psi, in.a, in.b, in.c);
        row.pairwiseBound = pw.boundValue;
        row.sumVariances = pw.target;
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Dynamics scenarios

struct Scenario {
    std::string name;
    LindbladGenerator generator;
    ComplexMatrix rho0;
    double tau = 1.0;
    double dt = 0.01;
};

namespace scenarios {

inline Scenario dephasing(double gamma = 0.5, double rx = 0.5) {
    return {"dephasing", {ComplexMatrix::Zero(2, 2), {pauli::Z()}, {gamma}},
            qubit_from_bloch({Vec3(rx, 0, 0)}).matrix(), 1.0 / gamma, 0.005 / gamma};
}

inline Scenario amplitude_damping(double gamma = 0.5) {
    ComplexMatrix lower = ComplexMatrix::Zero(2, 2);
    lower(0, 1) = 1.0;  // |0><1|, decay toward |0> (r_z = +1)
    return {"amplitude_damping", {ComplexMatrix::Zero(2, 2), {lower}, {gamma}},
            qubit_from_bloch({Vec3(0.3, 0.0, -0.2)}).matrix(), 2.0 / gamma, 0.01 / gamma};
}

inline Scenario rabi(double omega = 2.0) {
    return {"rabi", {0.5 * omega * pauli::X(), {}, {}}, qubit_from_bloch({Vec3(0, 0, 0.8)}).matrix(),
            2.0 * std::numbers::pi / omega * 1.5, 0.005};
}

inline Scenario fixed_point(double gamma = 0.5) {
    return {"fixed_point", {ComplexMatrix::Zero(2, 2), {pauli::Z()}, {gamma}},
            qubit_from_bloch({Vec3(0, 0, 0.6)}).matrix(), 1.0, 0.01};
}

inline Scenario zero_generator() {
    return {"zero_generator", LindbladGenerator::zero(2), qubit_from_bloch({Vec3(0.2, -0.1, 0.4)}).matrix(), 1.0,
            0.01};
}

inline Scenario qutrit_cascade(double gamma = 0.4) {
    ComplexMatrix l1 = ComplexMatrix::Zero(3, 3), l2 = ComplexMatrix::Zero(3, 3);
    l1(0, 1) = 1.0;
    l2(1, 2) = 1.0;
    RealVector p(3);
    p << 0.2, 0.3, 0.5;
    return {"qutrit_cascade", {ComplexMatrix::Zero(3, 3), {l1, l2}, {gamma, gamma}},
            DensityMatrix::diagonal(p).matrix(), 2.0 / gamma, 0.01 / gamma};
}

inline std::vector<Scenario> bundled() {
    return {dephasing(), amplitude_damping(), rabi(), fixed_point(), zero_generator(), qutrit_cascade()};
}

}  // namespace scenarios

struct ScenarioOutcome {
    Scenario scenario;
    Trajectory trajectory;
    QslReport report;
};

inline ScenarioOutcome run_scenario(const Scenario& sc) {
    const DensityMatrix rho0(sc.rho0);
    Trajectory traj = evolve(rho0, sc.generator, sc.tau, sc.dt);
    QslReport rep = reverse_qsl_report(traj, rho0);
    return {sc, std::move(traj), std::move(rep)};
}

}  // namespace qunc
