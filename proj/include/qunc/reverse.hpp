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

// Reverse (upper) bounds on dA^2 + dB^2.

#include <cmath>
#include <limits>
#include <optional>

#include "qunc/bounds.hpp"
#include "qunc/matops.hpp"
#include "qunc/states.hpp"

namespace qunc {

struct ReverseReport : BoundReport {
    double lambda = 0.0;                 // Tr K
    std::optional<DensityMatrix> sigmaK; // K / Tr K
};

inline constexpr double kMinTraceK = 1e-12;

/// Fidelity form:  dA^2 + dB^2 <= |<[A,B]>| + lambda F^2(rho, K/lambda),  lambda = Tr K.
///
/// The relative-entropy continuation |<[A,B]>| + lambda (1 - S(rho||sigma)) is computed as a
/// diagnostic only ("relent_bound", "relent_valid"); it is infinite-valued or below the target
/// in tight cases, e.g. sigma pure with rho mixed.
inline ReverseReport theorem4_fidelity_bound(const DensityMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b) {
    const UncertaintyMatrix u = canonical_K(rho, a, b);
    if (u.traceK <= kMinTraceK) throw DegenerateK("Tr K = " + std::to_string(u.traceK));

    ReverseReport r;
    r.name = "theorem4_fidelity";
    r.direction = Direction::upper;
    r.target = sum_variances(rho, a, b);
    r.lambda = u.traceK;
    ComplexMatrix sig = u.K / u.traceK;
    sig = 0.5 * (sig + sig.adjoint());
    r.sigmaK.emplace(sig);
    const double comm = commutator_expect(rho, a, b);
    const double f = fidelity(rho, *r.sigmaK);
    r.boundValue = comm + r.lambda * f * f;
    r.diagnostics["commutator"] = comm;
    r.diagnostics["fidelity_sq"] = f * f;
    r.diagnostics["overlap"] = (rho.matrix() * sig).trace().real();
    r.diagnostics["sigma_purity"] = purity(*r.sigmaK);

    const double relent = relative_entropy(rho, *r.sigmaK);
    r.diagnostics["relative_entropy"] = relent;
    if (std::isinf(relent)) {
        r.diagnostics["relent_bound"] = -std::numeric_limits<double>::infinity();
        r.diagnostics["relent_valid"] = 0.0;
    } else {
        const double second = comm + r.lambda * (1.0 - relent);
        r.diagnostics["relent_bound"] = second;
        r.diagnostics["relent_valid"] = second + kBoundSlack >= r.target ? 1.0 : 0.0;
    }
    return r;
}

/// True when the relative-entropy continuation fails on this instance.
inline bool relent_counterexample(const ReverseReport& r) { return r.diagnostics.at("relent_valid") == 0.0; }

// ---------------------------------------------------------------------------
// Numerical-radius family (pure states). All take T = sqrt(K) or K with K canonical.
//
// The printed numerical-radius and Berger forms square a variance-valued quantity; the
// dimensionally consistent term is w(K) = w^2(sqrt K) = lambda_max(K), reported as
// diagnostics["consistent_bound"].

namespace detail {
struct PureSetup {
    UncertaintyMatrix u;
    double comm;
    double sum;
};
inline PureSetup pure_setup(const StateVector& psi, const ComplexMatrix& a, const ComplexMatrix& b) {
    const DensityMatrix rho = psi.density();
    return {canonical_K(rho, a, b), commutator_expect(rho, a, b), sum_variances(rho, a, b)};
}
inline ReverseReport make_reverse(const char* name, const PureSetup& s, double term, double w_k) {
    ReverseReport r;
    r.name = name;
    r.direction = Direction::upper;
    r.target = s.sum;
    r.lambda = s.u.traceK;
    r.boundValue = s.comm + term;
    r.diagnostics["commutator"] = s.comm;
    r.diagnostics["w_K"] = w_k;
    r.diagnostics["consistent_bound"] = s.comm + w_k;
    return r;
}
}  // namespace detail

/// |<[A,B]>| + w^2(K)
inline ReverseReport numrad_reverse_bound(const StateVector& psi, const ComplexMatrix& a, const ComplexMatrix& b) {
    const auto s = detail::pure_setup(psi, a, b);
    const double w = numerical_radius(s.u.K);
    return detail::make_reverse("numrad", s, w * w, w);
}

/// |<[A,B]>| + w^4(sqrt K)
inline ReverseReport berger_bound(const StateVector& psi, const ComplexMatrix& a, const ComplexMatrix& b) {
    const auto s = detail::pure_setup(psi, a, b);
    const double w_sqrt = numerical_radius(herm_fn(s.u.K, fn::sqrt()));
    return detail::make_reverse("berger", s, std::pow(w_sqrt, 4), numerical_radius(s.u.K));
}

/// |<[A,B]>| + (||sqrt K|| + sqrt||K||)^2 / 4
inline ReverseReport kittaneh_bound(const StateVector& psi, const ComplexMatrix& a, const ComplexMatrix& b) {
    const auto s = detail::pure_setup(psi, a, b);
    const double n_sqrt = op_norm(herm_fn(s.u.K, fn::sqrt()));
    const double n_k = op_norm(s.u.K);
    const double half = 0.5 * (n_sqrt + std::sqrt(n_k));
    return detail::make_reverse("kittaneh", s, half * half, numerical_radius(s.u.K));
}

/// |<[A,B]>| + || alpha |T|^{2r} + (1 - alpha) |T*|^{2r} ||^{1/r},  T = sqrt K,  alpha in (0,1), r >= 1.
inline ReverseReport elhaddad_kittaneh_bound(const StateVector& psi, const ComplexMatrix& a, const ComplexMatrix& b,
                                             double alpha, double r) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParamError("alpha must lie in (0, 1)");
    if (!(r >= 1.0)) throw ParamError("r must be >= 1");
    const auto s = detail::pure_setup(psi, a, b);
    const ComplexMatrix t = herm_fn(s.u.K, fn::sqrt());
    const ComplexMatrix abs_t = herm_fn(t.adjoint() * t, fn::sqrt());
    const ComplexMatrix abs_t_star = herm_fn(t * t.adjoint(), fn::sqrt());
    const ComplexMatrix mix =
        alpha * herm_fn(abs_t, fn::power(2.0 * r)) + (1.0 - alpha) * herm_fn(abs_t_star, fn::power(2.0 * r));
    const double term = std::pow(op_norm(mix), 1.0 / r);
    ReverseReport rep = detail::make_reverse("elhaddad_kittaneh", s, term, numerical_radius(s.u.K));
    rep.diagnostics["alpha"] = alpha;
    rep.diagnostics["r"] = r;
    return rep;
}

}  // namespace qunc
