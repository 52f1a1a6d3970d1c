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
 * Markovian evolution  d rho/dt = L(rho),
 *
 *     L(rho) = -i[H, rho] + sum_k g_k (L_k rho L_k^dag - {L_k^dag L_k, rho}/2),
 *
 * integrated with fixed-step RK4, plus the bookkeeping for the reverse speed limit
 *
 *     sin(2 B) dB/dt >= S(rho0) - ln Tr exp(-/+ L(rho(t)))   (pointwise)
 *     sin^2 B_tau    >= tau * Lambda_reverse                  (integrated)
 *
 * where B is the Bures angle to rho0. For trace-preserving L the right-hand sides are never
 * positive (Tr e^X >= d for traceless X, S <= ln d), so tau <= sin^2 B / Lambda is only emitted
 * when Lambda > 0.
 */

#include <cmath>
#include <string>
#include <vector>

#include "qunc/bounds.hpp"
#include "qunc/matops.hpp"
#include "qunc/states.hpp"

namespace qunc {

struct LindbladGenerator {
    ComplexMatrix H;
    std::vector<ComplexMatrix> jumpOps;
    std::vector<double> rates;

    Eigen::Index dim() const { return H.rows(); }

    void validate() const {
        require_square(H, "Hamiltonian");
        if (!is_hermitian(H)) throw NotHermitian("Hamiltonian");
        if (jumpOps.size() != rates.size()) throw ConfigError("jump_ops and rates differ in length");
        for (std::size_t k = 0; k < jumpOps.size(); ++k) {
            require_same_dim(jumpOps[k].rows(), H.rows(), "jump operator");
            require_same_dim(jumpOps[k].cols(), H.cols(), "jump operator");
            if (!(rates[k] >= 0.0)) throw ConfigError("rates must be nonnegative");
        }
    }

    static LindbladGenerator zero(Eigen::Index d) { return {ComplexMatrix::Zero(d, d), {}, {}}; }
};

inline ComplexMatrix lindblad_apply(const LindbladGenerator& gen, const ComplexMatrix& rho) {
    require_same_dim(gen.dim(), rho.rows(), "lindblad_apply");
    ComplexMatrix out = -I_unit * commutator(gen.H, rho);
    for (std::size_t k = 0; k < gen.jumpOps.size(); ++k) {
        const ComplexMatrix& l = gen.jumpOps[k];
        const ComplexMatrix ldl = l.adjoint() * l;
        out += gen.rates[k] * (l * rho * l.adjoint() - 0.5 * anticommutator(ldl, rho));
    }
    return out;
}

inline ComplexMatrix lindblad_apply(const LindbladGenerator& gen, const DensityMatrix& rho) {
    return lindblad_apply(gen, rho.matrix());
}

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::vector<double> bures;        // Bures angle to states[0]
    std::vector<double> sinSqBures;   // 1 - F^2, computed without going through arccos
    std::vector<ComplexMatrix> genOut;  // L(rho(t))
    int projections = 0;
    double maxDrift = 0.0;

    double duration() const { return times.back() - times.front(); }
    std::size_t size() const { return times.size(); }
};

namespace detail {
inline double state_drift(const ComplexMatrix& m) {
    const double herm = max_asymmetry(m);
    const double tr = std::abs(m.trace() - 1.0);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> s(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    const double neg = std::max(0.0, -s.eigenvalues()(0));
    return std::max({herm, tr, neg});
}

inline ComplexMatrix project_to_state(const ComplexMatrix& m) {
    const EigenSystem es = herm_eig(0.5 * (m + m.adjoint()));
    RealVector p = es.values.cwiseMax(0.0);
    p /= p.sum();
    return es.vectors * p.cast<cplx>().asDiagonal() * es.vectors.adjoint();
}
}  // namespace detail

inline constexpr double kProjectDrift = 1e-9;
inline constexpr double kDivergedDrift = 1e-6;

/// Fixed-step classical RK4 from rho0 over [0, tau] with step dt <= tau/100.
inline Trajectory evolve(const DensityMatrix& rho0, const LindbladGenerator& gen, double tau, double dt) {
    gen.validate();
    require_same_dim(gen.dim(), rho0.dim(), "evolve");
    if (!(tau > 0.0)) throw ParamError("tau must be positive");
    if (!(dt > 0.0) || dt > tau / 100.0 * (1.0 + 1e-12)) throw ParamError("dt must satisfy 0 < dt <= tau/100");

    const auto steps = static_cast<long>(std::ceil(tau / dt - 1e-9));
    const double h = tau / static_cast<double>(steps);

    Trajectory traj;
    traj.times.reserve(steps + 1);
    ComplexMatrix cur = rho0.matrix();
    auto record = [&](double t) {
        traj.times.push_back(t);
        traj.states.emplace_back(cur);
        const double f = fidelity(rho0, traj.states.back());
        traj.bures.push_back(std::acos(f));
        traj.sinSqBures.push_back(std::max(0.0, 1.0 - f * f));
        traj.genOut.push_back(lindblad_apply(gen, cur));
    };
    record(0.0);
    for (long n = 1; n <= steps; ++n) {
        const ComplexMatrix k1 = lindblad_apply(gen, cur);
        const ComplexMatrix k2 = lindblad_apply(gen, ComplexMatrix(cur + 0.5 * h * k1));
        const ComplexMatrix k3 = lindblad_apply(gen, ComplexMatrix(cur + 0.5 * h * k2));
        const ComplexMatrix k4 = lindblad_apply(gen, ComplexMatrix(cur + h * k3));
        cur += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const double drift = detail::state_drift(cur);
        traj.maxDrift = std::max(traj.maxDrift, drift);
        if (drift > kDivergedDrift)
            throw IntegrationDiverged("state drift " + std::to_string(drift) + " at t = " + std::to_string(n * h));
        if (drift > kProjectDrift) {
            cur = detail::project_to_state(cur);
            ++traj.projections;
        } else {
            cur = 0.5 * (cur + cur.adjoint());
        }
        record(n * h);
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Speed-limit bookkeeping

struct AssumptionReport {
    bool monotone = false;       // Bures angle nondecreasing
    bool constantSign = false;   // Tr[rho0 L(rho(t))] keeps one sign
    int sign = 0;                // +1 / -1, 0 when degenerate
    bool degenerate = false;     // Tr[rho0 L(rho(t))] vanishes everywhere
    double maxAbsOverlap = 0.0;

    bool passes() const { return monotone && constantSign && !degenerate; }
};

inline constexpr double kZeroOverlap = 1e-12;

inline AssumptionReport qsl_assumption_check(const Trajectory& traj, const DensityMatrix& rho0) {
    AssumptionReport rep;
    rep.monotone = true;
    for (std::size_t i = 1; i < traj.size(); ++i)
        if (traj.sinSqBures[i] < traj.sinSqBures[i - 1] - 1e-12) rep.monotone = false;

    bool pos = false, neg = false;
    for (const auto& g : traj.genOut) {
        const double ov = (rho0.matrix() * g).trace().real();
        rep.maxAbsOverlap = std::max(rep.maxAbsOverlap, std::abs(ov));
        if (ov > kZeroOverlap) pos = true;
        if (ov < -kZeroOverlap) neg = true;
    }
    rep.degenerate = !pos && !neg;
    rep.constantSign = !(pos && neg);
    rep.sign = rep.degenerate || !rep.constantSign ? 0 : (pos ? +1 : -1);
    return rep;
}

/// S(rho0) - ln Tr exp(-branch * X)
inline double reverse_integrand(double entropy0, const ComplexMatrix& gen_out, int branch) {
    const ComplexMatrix herm = 0.5 * (gen_out + gen_out.adjoint());
    return entropy0 - log_trace_exp_neg(static_cast<double>(branch) * herm);
}

/// (1/tau) * trapezoid of S(rho0) - ln Tr exp(-/+ L(rho(t))) over the stored grid.
inline double lambda_reverse(const Trajectory& traj, const DensityMatrix& rho0, int branch) {
    if (branch != 1 && branch != -1) throw ParamError("branch sign must be +1 or -1");
    const double s0 = von_neumann_entropy(rho0);
    std::vector<double> f(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) f[i] = reverse_integrand(s0, traj.genOut[i], branch);
    if (traj.size() == 1) return f[0];
    double acc = 0.0;
    for (std::size_t i = 1; i < traj.size(); ++i) acc += 0.5 * (f[i] + f[i - 1]) * (traj.times[i] - traj.times[i - 1]);
    return acc / traj.duration();
}

/// d(sin^2 B)/dt = sin(2B) dB/dt by central differences, one-sided at the ends.
inline std::vector<double> sin2_bures_rate(const Trajectory& traj) {
    const std::size_t n = traj.size();
    std::vector<double> out(n, 0.0);
    if (n < 3) return out;
    const auto& q = traj.sinSqBures;
    const auto& t = traj.times;
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (q[i + 1] - q[i - 1]) / (t[i + 1] - t[i - 1]);
    out[0] = (-3.0 * q[0] + 4.0 * q[1] - q[2]) / (t[2] - t[0]);
    out[n - 1] = (3.0 * q[n - 1] - 4.0 * q[n - 2] + q[n - 3]) / (t[n - 1] - t[n - 3]);
    return out;
}

struct PointwiseCheck {
    bool checked = false;
    std::string reason;
    double maxViolation = -std::numeric_limits<double>::infinity();  // max of rhs - lhs
    double maxPbViolation = -std::numeric_limits<double>::infinity();  // rhs - |Tr[rho0 L]|
};

/// Checks sin(2B) dB/dt >= S(rho0) - ln Tr e^{-/+ L(rho(t))} at every interior grid point.
/// Skipped (checked = false) when the monotonicity / sign assumptions fail.
inline PointwiseCheck pointwise_pb_check(const Trajectory& traj, const DensityMatrix& rho0, int branch) {
    PointwiseCheck out;
    const AssumptionReport a = qsl_assumption_check(traj, rho0);
    if (!a.monotone) {
        out.reason = "Bures angle not monotone";
        return out;
    }
    if (!a.constantSign) {
        out.reason = "Tr[rho0 L(rho)] changes sign";
        return out;
    }
    if (!a.degenerate && a.sign != branch) {
        out.reason = "branch sign does not match Tr[rho0 L(rho)]";
        return out;
    }
    out.checked = true;
    const double s0 = von_neumann_entropy(rho0);
    const std::vector<double> rate = sin2_bures_rate(traj);
    for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
        const double rhs = reverse_integrand(s0, traj.genOut[i], branch);
        out.maxViolation = std::max(out.maxViolation, rhs - rate[i]);
        const double ov = std::abs((rho0.matrix() * traj.genOut[i]).trace().real());
        out.maxPbViolation = std::max(out.maxPbViolation, rhs - ov);
    }
    if (traj.size() < 3) out.maxViolation = 0.0;
    return out;
}

struct QslReport {
    AssumptionReport assumptions;
    int branch = 0;
    double entropy0 = 0.0;
    double logDim = 0.0;
    double lambdaReverse = 0.0;
    double tau = 0.0;
    double sinSqFinal = 0.0;
    double integratedLhs = 0.0;  // sin^2 B_tau - sin^2 B_0
    double integratedRhs = 0.0;  // tau * Lambda
    bool integratedChecked = false;
    bool integratedHolds = false;
    bool timeBoundValid = false;  // tau <= sin^2 B_tau / Lambda is meaningful
    double timeBound = std::numeric_limits<double>::quiet_NaN();
    std::string reason;
    PointwiseCheck pointwise;

    double integratedMargin() const { return integratedLhs - integratedRhs; }
};

inline QslReport reverse_qsl_report(const Trajectory& traj, const DensityMatrix& rho0) {
    QslReport r;
    r.assumptions = qsl_assumption_check(traj, rho0);
    // a degenerate trajectory has no preferred branch; the + branch gives the same numbers
    r.branch = r.assumptions.sign == 0 ? 1 : r.assumptions.sign;
    r.entropy0 = von_neumann_entropy(rho0);
    r.logDim = std::log(static_cast<double>(rho0.dim()));
    r.tau = traj.duration();
    r.lambdaReverse = lambda_reverse(traj, rho0, r.branch);
    r.sinSqFinal = traj.sinSqBures.back();
    r.integratedLhs = traj.sinSqBures.back() - traj.sinSqBures.front();
    r.integratedRhs = r.tau * r.lambdaReverse;
    r.pointwise = pointwise_pb_check(traj, rho0, r.branch);

    const bool usable = r.assumptions.monotone && r.assumptions.constantSign;
    if (!usable) {
        r.reason = r.pointwise.reason;
        return r;
    }
    r.integratedChecked = true;
    r.integratedHolds = r.integratedLhs + 1e-9 >= r.integratedRhs;
    if (r.lambdaReverse > 0.0) {
        r.timeBoundValid = true;
        r.timeBound = r.sinSqFinal / r.lambdaReverse;
    } else {
        r.reason = "nonpositive Lambda_reverse";
    }
    return r;
}

}  // namespace qunc
