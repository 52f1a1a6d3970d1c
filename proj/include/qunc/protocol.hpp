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
 * Fidelity lower bound from two variance measurements (qubits).
 *
 * Given rho = (I + r.sigma)/2, a target sigma = (I + s.sigma)/2 and a measurable A = sigma.m,
 * find B = lambda sigma.n whose normalized uncertainty matrix K/Tr K equals the target. Then
 *
 *     F^2(rho, sigma) >= Tr(rho K) / Tr K = (dA^2 + dB^2 -/+ i<[A,B]>) / Tr K.
 *
 * Writing w = lambda n, the Bloch vector of K_+/Tr K_+ matches s iff
 *
 *     m x w - p1 m - (r.w) w = s (1 + p1^2 + |w|^2 + (r.w)^2) / 2,     p1 = r.m,
 *
 * three polynomial equations in three unknowns, solved by damped Newton from seeded starts.
 */

#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "qunc/bounds.hpp"
#include "qunc/states.hpp"

namespace qunc {

enum class ProtocolStatus { solved, degenerate, no_solution };

inline const char* to_string(ProtocolStatus s) {
    switch (s) {
        case ProtocolStatus::solved: return "solved";
        case ProtocolStatus::degenerate: return "degenerate";
        case ProtocolStatus::no_solution: return "no_solution";
    }
    return "?";
}

struct ProtocolSolution {
    double lambda = 0.0;
    Vec3 nHat = Vec3::UnitX();
    double residual = std::numeric_limits<double>::infinity();  // of the solved vector equation
    double printedResidual = std::numeric_limits<double>::infinity();  // with denominator 1 + p1^2/2 + lambda^2 p2^2/2
    double matrixResidual = std::numeric_limits<double>::infinity();   // max |K/Tr K - sigma|
    int sign = +1;  // uncertainty-matrix sign that reproduces sigma
    int starts = 0;
    int converged = 0;
    ProtocolStatus status = ProtocolStatus::no_solution;

    bool accepted() const { return status == ProtocolStatus::solved; }
};

inline constexpr double kProtocolAccept = 1e-6;
inline constexpr int kProtocolMinStarts = 32;

namespace detail {
inline Eigen::Matrix3d skew(const Vec3& m) {
    Eigen::Matrix3d s;
    s << 0, -m.z(), m.y(), m.z(), 0, -m.x(), -m.y(), m.x(), 0;
    return s;
}

struct ProtocolSystem {
    Vec3 r, s, m;
    double p1;

    Vec3 value(const Vec3& w) const {
        const double rw = r.dot(w);
        return m.cross(w) - p1 * m - rw * w - s * 0.5 * (1.0 + p1 * p1 + w.squaredNorm() + rw * rw);
    }
    Eigen::Matrix3d jacobian(const Vec3& w) const {
        const double rw = r.dot(w);
        return skew(m) - (w * r.transpose() + rw * Eigen::Matrix3d::Identity()) -
               s * (w + rw * r).transpose();
    }
};

inline Vec3 newton(const ProtocolSystem& sys, Vec3 w, int max_iter = 100) {
    double fnorm = sys.value(w).norm();
    for (int it = 0; it < max_iter && fnorm > 1e-15; ++it) {
        const Vec3 f = sys.value(w);
        const Eigen::Matrix3d j = sys.jacobian(w);
        // minimum-norm step: the Jacobian is singular on solution curves (r = 0, s perp m)
        Vec3 step = j.completeOrthogonalDecomposition().solve(-f);
        if (!step.allFinite()) step = -j.transpose() * f;
        double t = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 40; ++ls, t *= 0.5) {
            const Vec3 trial = w + t * step;
            const double tn = sys.value(trial).norm();
            if (tn < fnorm) {
                w = trial;
                fnorm = tn;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    return w;
}
}  // namespace detail

/// Bloch vector of K_s(rho, sigma.m, lambda sigma.n) / Tr K_s.
inline Vec3 normalized_K_bloch_direct(const Vec3& r, const Vec3& m, const Vec3& w, int sign) {
    const DensityMatrix rho = qubit_from_bloch({r});
    const UncertaintyMatrix u = uncertainty_matrix(rho, pauli::along(m), pauli::along(w), sign);
    const ComplexMatrix sig = u.K / u.traceK;
    return {(sig * pauli::X()).trace().real(), (sig * pauli::Y()).trace().real(), (sig * pauli::Z()).trace().real()};
}

inline ProtocolSolution construct_B(const BlochVector& r, const BlochVector& s, const Vec3& m_hat, Rng& rng,
                                    int starts = kProtocolMinStarts) {
    if (r.norm() > 1.0 + kTol || s.norm() > 1.0 + kTol) throw InvalidState("Bloch vector longer than 1");
    if (std::abs(m_hat.norm() - 1.0) > kTol) throw ParamError("m must be a unit vector");
    if (starts < kProtocolMinStarts) throw ParamError("construct_B needs at least 32 starts");

    const detail::ProtocolSystem sys{r.r, s.r, m_hat, r.r.dot(m_hat)};
    ProtocolSolution best;
    best.starts = starts;
    Vec3 best_w = Vec3::Zero();
    // among converged starts keep the smallest lambda; w = 0 is always the first start
    constexpr double kConverged = 1e-12;
    for (int k = 0; k < starts; ++k) {
        Vec3 w0 = Vec3::Zero();
        if (k > 0) w0 = std::exp(-3.0 + 6.0 * rng.uniform()) * random_unit_vec3(rng);
        const Vec3 w = detail::newton(sys, w0);
        const double res = sys.value(w).norm();
        if (res < kProtocolAccept) ++best.converged;
        const bool both_converged = res < kConverged && best.residual < kConverged;
        if (both_converged ? w.norm() < best_w.norm() : res < best.residual) {
            best.residual = res;
            best_w = w;
        }
    }

    best.lambda = best_w.norm();
    if (best.lambda > 0) best.nHat = best_w / best.lambda;

    const double p2 = r.r.dot(best.nHat);
    const double p1 = sys.p1;
    const double l = best.lambda;
    const Vec3 printed_rhs = l * m_hat.cross(best.nHat) - p1 * m_hat - l * l * p2 * best.nHat;
    best.printedResidual = (s.r * (1.0 + 0.5 * p1 * p1 + 0.5 * l * l * p2 * p2) - printed_rhs).norm();

    const bool commuting = best.lambda < 1e-8 || m_hat.cross(best.nHat).norm() < 1e-8;
    if (best.residual >= kProtocolAccept) {
        best.status = ProtocolStatus::no_solution;
        return best;
    }
    if (commuting) {
        best.status = ProtocolStatus::degenerate;
        return best;
    }
    for (int sign : {+1, -1}) {
        const double mr = (normalized_K_bloch_direct(r.r, m_hat, best_w, sign) - s.r).cwiseAbs().maxCoeff();
        if (mr < best.matrixResidual) {
            best.matrixResidual = mr;
            best.sign = sign;
        }
    }
    best.status = best.matrixResidual < kProtocolAccept ? ProtocolStatus::solved : ProtocolStatus::no_solution;
    return best;
}

struct FidelityBound {
    double bound = 0.0;          // Tr(rho K_s)/Tr K_s from the two variances and the commutator
    double canonicalForm = 0.0;  // (dA^2 + dB^2 - |<[A,B]>|) / Tr K
    double trueFidelitySq = 0.0;
    double traceK = 0.0;
    double sumVariances = 0.0;
};

inline FidelityBound fidelity_lower_bound(const DensityMatrix& rho, const Vec3& m_hat, const ProtocolSolution& sol) {
    if (!sol.accepted()) throw ParamError("fidelity_lower_bound needs an accepted protocol solution");
    if (rho.dim() != 2) throw DimensionError("protocol is qubit-only");
    const ComplexMatrix a = pauli::along(m_hat);
    const ComplexMatrix b = sol.lambda * pauli::along(sol.nHat);
    const UncertaintyMatrix u = uncertainty_matrix(rho, a, b, sol.sign);

    FidelityBound fb;
    fb.sumVariances = sum_variances(rho, a, b);
    const double c = commutator_expect_signed(rho, a, b);
    fb.traceK = u.traceK;
    // Tr(rho K_s) = sum - s i<[A,B]> = sum + s c
    fb.bound = (fb.sumVariances + sol.sign * c) / fb.traceK;
    fb.canonicalForm = (fb.sumVariances - std::abs(c)) / fb.traceK;
    ComplexMatrix sig = u.K / u.traceK;
    sig = 0.5 * (sig + sig.adjoint());
    const double f = fidelity(rho, DensityMatrix(sig));
    fb.trueFidelitySq = f * f;
    return fb;
}

/// Closed-form solution at r = 0 with s perpendicular to m: n = s_hat x m,
/// lambda = (1 - sqrt(1 - |s|^2)) / |s|.
inline std::optional<std::pair<double, Vec3>> analytic_solution_r0(const Vec3& s, const Vec3& m_hat) {
    const double sn = s.norm();
    if (sn < 1e-12 || sn > 1.0 || std::abs(s.dot(m_hat)) > 1e-12) return std::nullopt;
    const Vec3 n = (s / sn).cross(m_hat);
    const double lambda = (1.0 - std::sqrt(std::max(0.0, 1.0 - sn * sn))) / sn;
    return std::make_pair(lambda, n);
}

}  // namespace qunc
