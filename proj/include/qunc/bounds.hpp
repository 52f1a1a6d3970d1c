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
 * Forward (lower) bounds on the variance sum  dA^2 + dB^2.
 *
 * Everything is built on the uncertainty matrix
 *
 *     K_s = (C + s iD)(C - s iD) = C^2 + D^2 - s i[C, D],   C = A - <A>, D = B - <B>,
 *
 * whose state average is  Tr(rho K_s) = dA^2 + dB^2 - s i<[A,B]>.  The canonical sign is
 * the one giving the smaller average, so Tr(rho K) = dA^2 + dB^2 - |<[A,B]>|.
 */

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qunc/core.hpp"
#include "qunc/matops.hpp"
#include "qunc/states.hpp"

namespace qunc {

enum class Direction { lower, upper };

inline constexpr double kBoundSlack = 1e-8;

struct BoundReport {
    std::string name;
    double boundValue = 0.0;
    double target = 0.0;  // the quantity being bounded
    Direction direction = Direction::lower;
    bool valid = true;
    std::map<std::string, double> diagnostics;

    /// Signed amount by which the inequality is violated (<= 0 means it holds).
    double violation() const { return direction == Direction::lower ? boundValue - target : target - boundValue; }
    bool holds(double slack = kBoundSlack) const { return !valid || violation() <= slack; }
};

struct UncertaintyMatrix {
    ComplexMatrix K;
    int sign = +1;
    double traceK = 0.0;
    double meanA = 0.0;
    double meanB = 0.0;
    double rhoTracePlus = 0.0;   // Tr(rho K_+)
    double rhoTraceMinus = 0.0;  // Tr(rho K_-)

    double rhoTrace() const { return sign > 0 ? rhoTracePlus : rhoTraceMinus; }
};

// ---------------------------------------------------------------------------
// Moments

namespace detail {
inline void check_observables(const DensityMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b) {
    require_square(a, "observable A");
    require_square(b, "observable B");
    require_same_dim(rho.dim(), a.rows(), "state vs A");
    require_same_dim(rho.dim(), b.rows(), "state vs B");
    if (!is_hermitian(a)) throw NotHermitian("observable A");
    if (!is_hermitian(b)) throw NotHermitian("observable B");
}
}  // namespace detail

inline double expectation(const DensityMatrix& rho, const ComplexMatrix& a) {
    require_same_dim(rho.dim(), a.rows(), "expectation");
    return (rho.matrix() * a).trace().real();
}

inline double variance(const DensityMatrix& rho, const ComplexMatrix& a) {
    require_square(a, "observable");
    require_same_dim(rho.dim(), a.rows(), "variance");
    const double m = expectation(rho, a);
    return (rho.matrix() * a * a).trace().real() - m * m;
}

/// Im Tr(rho [A, B]); <[A,B]> is purely imaginary for Hermitian A, B.
inline double commutator_expect_signed(const DensityMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(rho.dim(), a.rows(), "commutator");
    require_same_dim(rho.dim(), b.rows(), "commutator");
    return (rho.matrix() * commutator(a, b)).trace().imag();
}

/// |<[A, B]>|
inline double commutator_expect(const DensityMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b) {
    return std::abs(commutator_expect_signed(rho, a, b));
}

inline double sum_variances(const DensityMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b) {
    return variance(rho, a) + variance(rho, b);
}

// ---------------------------------------------------------------------------
// Uncertainty matrix

/// K_s for an explicit sign s = +1 ((C+iD)(C-iD)) or s = -1 ((C-iD)(C+iD)).
inline UncertaintyMatrix uncertainty_matrix(const DensityMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b,
                                            int sign) {
    detail::check_observables(rho, a, b);
    if (sign != 1 && sign != -1) throw ParamError("sign must be +1 or -1");
    const Eigen::Index d = rho.dim();
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);

    UncertaintyMatrix u;
    u.meanA = expectation(rho, a);
    u.meanB = expectation(rho, b);
    const ComplexMatrix c = a - u.meanA * id;
    const ComplexMatrix dd = b - u.meanB * id;
    const ComplexMatrix base = c * c + dd * dd;
    const ComplexMatrix comm = commutator(c, dd);
    const ComplexMatrix k_plus = base - I_unit * comm;
    const ComplexMatrix k_minus = base + I_unit * comm;
    u.rhoTracePlus = (rho.matrix() * k_plus).trace().real();
    u.rhoTraceMinus = (rho.matrix() * k_minus).trace().real();
    u.sign = sign;
    u.K = sign > 0 ? k_plus : k_minus;
    u.K = 0.5 * (u.K + u.K.adjoint());
    u.traceK = u.K.trace().real();
    return u;
}

/// The sign minimizing Tr(rho K); ties (within tolerance) resolve to s = +1.
inline UncertaintyMatrix canonical_K(const DensityMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b) {
    UncertaintyMatrix plus = uncertainty_matrix(rho, a, b, +1);
    const double tie_tol = scaled_tol(std::abs(plus.rhoTracePlus) + std::abs(plus.rhoTraceMinus));
    if (plus.rhoTraceMinus < plus.rhoTracePlus - tie_tol) return uncertainty_matrix(rho, a, b, -1);
    return plus;
}

/// max over both signs of |Tr(rho K_s) - (dA^2 + dB^2 - s i<[A,B]>)|. Should be float noise.
inline double uncertainty_equality_residual(const DensityMatrix& rho, const ComplexMatrix& a,
                                            const ComplexMatrix& b) {
    const UncertaintyMatrix u = uncertainty_matrix(rho, a, b, +1);
    const double sum = sum_variances(rho, a, b);
    const cplx comm = (rho.matrix() * commutator(a, b)).trace();
    const double r_plus = std::abs(cplx(u.rhoTracePlus) - (sum - I_unit * comm));
    const double r_minus = std::abs(cplx(u.rhoTraceMinus) - (sum + I_unit * comm));
    return std::max(r_plus, r_minus);
}

// ---------------------------------------------------------------------------
// Robertson

inline BoundReport robertson_sum_bound(const DensityMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b) {
    detail::check_observables(rho, a, b);
    BoundReport r;
    r.name = "robertson";
    r.direction = Direction::lower;
    r.target = sum_variances(rho, a, b);
    r.boundValue = commutator_expect(rho, a, b);
    return r;
}

// ---------------------------------------------------------------------------
// Mixed-state sum bound via vectorization

/// A normalized vector in C^{d^2} orthogonal to |sqrt(rho)>.
inline StateVector random_perp(const DensityMatrix& rho, Rng& rng) {
    const ComplexVector s = vectorize(herm_sqrt(rho));
    ComplexVector v = complex_gaussian_vector(s.size(), rng);
    v -= s * s.dot(v);
    v -= s * s.dot(v);
    return StateVector::normalized(v);
}

/// |<[A,B]>| + |<perp| I (x) (A - s iB) |sqrt(rho)>|^2 with s the canonical sign.
/// Without `perp` the optimum perp = v/|v|, v = I (x) (C - s iD)|sqrt(rho)>, is used; it is
/// orthogonal to |sqrt(rho)> because the centered means vanish, and saturates the bound.
inline BoundReport theorem1_bound(const DensityMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b,
                                  const std::optional<StateVector>& perp = std::nullopt) {
    detail::check_observables(rho, a, b);
    const Eigen::Index d = rho.dim();
    const UncertaintyMatrix u = canonical_K(rho, a, b);
    const ComplexVector sqrt_rho = vectorize(herm_sqrt(rho));
    const double s = static_cast<double>(u.sign);

    BoundReport r;
    r.name = "theorem1";
    r.direction = Direction::lower;
    r.target = sum_variances(rho, a, b);
    const double comm = commutator_expect(rho, a, b);

    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    ComplexVector w;
    if (perp) {
        require_same_dim(perp->dim(), d * d, "theorem1 perp (needs d^2 entries)");
        const double overlap = std::abs(sqrt_rho.dot(perp->vector()));
        if (overlap > 1e-8) throw NotOrthogonal("|<sqrt(rho)|perp>| = " + std::to_string(overlap));
        w = perp->vector();
        r.diagnostics["optimal_perp"] = 0.0;
    } else {
        const ComplexMatrix x = (a - u.meanA * id) - s * I_unit * (b - u.meanB * id);
        const ComplexVector v = lift_left(x) * sqrt_rho;
        const double nv = v.norm();
        r.diagnostics["optimal_perp"] = 1.0;
        r.diagnostics["perp_overlap"] = nv > 0 ? std::abs(sqrt_rho.dot(v)) / nv : 0.0;
        if (nv <= kClamp) {
            // zero variances: every orthogonal direction gives a zero term
            r.boundValue = comm;
            r.diagnostics["strengthening"] = 0.0;
            return r;
        }
        w = v / nv;
    }
    const ComplexMatrix op = a - s * I_unit * b;
    const cplx amp = w.dot(lift_left(op) * sqrt_rho);
    const double term = std::norm(amp);
    r.diagnostics["strengthening"] = term;
    r.diagnostics["commutator"] = comm;
    r.boundValue = comm + term;
    return r;
}

// ---------------------------------------------------------------------------
// Optimization-free bound from Peierls-Bogoliubov

/// ln Tr e^{-K} computed stably from the spectrum.
inline double log_trace_exp_neg(const ComplexMatrix& k) {
    const EigenSystem es = herm_eig(k);
    const double shift = es.min();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < es.dim(); ++i) acc += std::exp(-(es.values(i) - shift));
    return -shift + std::log(acc);
}

/// |<[A,B]>| + S(rho) - ln Tr e^{-K}.
inline BoundReport theorem2_pb_bound(const DensityMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b) {
    detail::check_observables(rho, a, b);
    const UncertaintyMatrix u = canonical_K(rho, a, b);
    BoundReport r;
    r.name = "theorem2_pb";
    r.direction = Direction::lower;
    r.target = sum_variances(rho, a, b);
    const double comm = commutator_expect(rho, a, b);
    const double entropy = von_neumann_entropy(rho);
    const double ltr = log_trace_exp_neg(u.K);
    r.boundValue = comm + entropy - ltr;
    r.diagnostics["commutator"] = comm;
    r.diagnostics["entropy"] = entropy;
    r.diagnostics["log_trace_exp_neg_K"] = ltr;
    r.diagnostics["sign"] = u.sign;
    return r;
}

struct Theorem2Equality {
    double frobenius = 0.0;      // ||rho - e^{-K}||_F, the printed saturation condition
    double gibbs = 0.0;          // ||rho - e^{-K}/Tr e^{-K}||_F, the actual saturation condition
    double bound_gap = 0.0;      // sum - bound
    std::optional<double> qubit_scalar;  // e^{-t} cosh|R| - 1/2
    std::optional<double> qubit_vector;  // || e^{-t} sinh|R|/|R| R + r/2 ||
};

inline Theorem2Equality theorem2_equality_residual(const DensityMatrix& rho, const ComplexMatrix& a,
                                                   const ComplexMatrix& b) {
    const UncertaintyMatrix u = canonical_K(rho, a, b);
    const ComplexMatrix e = herm_fn(u.K, fn::neg_exp());
    Theorem2Equality out;
    out.frobenius = (rho.matrix() - e).norm();
    out.gibbs = (rho.matrix() - e / e.trace().real()).norm();
    const BoundReport rep = theorem2_pb_bound(rho, a, b);
    out.bound_gap = rep.target - rep.boundValue;
    if (rho.dim() == 2) {
        // K = t I + R.sigma
        const double t = 0.5 * u.traceK;
        const Vec3 big_r(0.5 * (u.K * pauli::X()).trace().real(), 0.5 * (u.K * pauli::Y()).trace().real(),
                         0.5 * (u.K * pauli::Z()).trace().real());
        const double rn = big_r.norm();
        const double shc = rn > 1e-300 ? std::sinh(rn) / rn : 1.0;
        const Vec3 r = bloch_from_qubit(rho).r;
        out.qubit_scalar = std::exp(-t) * std::cosh(rn) - 0.5;
        out.qubit_vector = (std::exp(-t) * shc * big_r + 0.5 * r).norm();
    }
    return out;
}

struct FixedPointResult {
    std::optional<DensityMatrix> rho;
    bool converged = false;
    int iterations = 0;
    double step = 0.0;
};

/// Damped iteration rho <- (1 - mix) rho + mix e^{-K(rho)}/Tr e^{-K(rho)}. A fixed point is a
/// state at which the Peierls-Bogoliubov bound is tight. Convergence is not guaranteed.
inline FixedPointResult theorem2_gibbs_fixed_point(const ComplexMatrix& a, const ComplexMatrix& b,
                                                   const DensityMatrix& start, int max_iter = 5000,
                                                   double mix = 0.5, double tol = 1e-12) {
    FixedPointResult res;
    ComplexMatrix cur = start.matrix();
    for (int it = 1; it <= max_iter; ++it) {
        const UncertaintyMatrix u = canonical_K(DensityMatrix(cur), a, b);
        ComplexMatrix g = herm_fn(u.K, fn::neg_exp());
        g /= g.trace().real();
        ComplexMatrix next = (1.0 - mix) * cur + mix * g;
        next = 0.5 * (next + next.adjoint());
        next /= next.trace().real();
        res.step = (next - cur).norm();
        res.iterations = it;
        cur = next;
        if (res.step < tol) {
            res.converged = true;
            break;
        }
    }
    res.rho.emplace(cur);
    return res;
}

// ---------------------------------------------------------------------------
// Bauer-Householder sharpening

struct BauerHouseholderTerm {
    double term_cos = 0.0;   // |<phi|K|psi>|^2 / (<K>_phi cos U), as printed
    double term_cos2 = 0.0;  // |<phi|K|psi>|^2 / (<K>_phi cos^2 U), Bauer-Householder-consistent
    double cos_upsilon = 1.0;
    double theta = 0.0;
    double alpha = 1.0;
    bool valid = true;
};

inline constexpr double kMinCosUpsilon = 1e-9;

/// The Bauer-Householder term for matrix sqrt(K) and the pair (psi, phi):
/// U = 2 arccot(alpha cot(theta/2)), alpha = sqrt(lambda_max/lambda_min), cos(theta) = |<psi|phi>|.
/// Singular K (lambda_min <= 1e-12) sends alpha to infinity, U to 0 (plain Cauchy-Schwarz).
inline BauerHouseholderTerm bauer_householder_term(const ComplexMatrix& k, const ComplexVector& psi,
                                                   const ComplexVector& phi) {
    require_same_dim(k.rows(), psi.size(), "Bauer-Householder psi");
    require_same_dim(k.rows(), phi.size(), "Bauer-Householder phi");
    if (!psi.allFinite() || !phi.allFinite()) throw InvalidAngle("non-finite input vector");
    const EigenSystem es = herm_eig(k);
    BauerHouseholderTerm t;

    const double k_phi = phi.dot(k * phi).real();
    if (k_phi <= 1e-14) throw InvalidAngle("phi lies in the kernel of K; generalized angle undefined");
    const double cos_theta = std::clamp(std::abs(psi.dot(phi)) / (psi.norm() * phi.norm()), 0.0, 1.0);
    t.theta = std::acos(cos_theta);
    const double tan_half = std::sqrt(std::max(0.0, 1.0 - cos_theta)) / std::sqrt(1.0 + cos_theta);
    const double lmin = std::max(es.min(), 0.0);
    const double lmax = es.max();
    if (lmin <= kClamp) {
        t.alpha = std::numeric_limits<double>::infinity();
        t.cos_upsilon = 1.0;
    } else {
        t.alpha = std::sqrt(lmax / lmin);
        const double a2 = t.alpha * t.alpha;
        const double t2 = tan_half * tan_half;
        t.cos_upsilon = (a2 - t2) / (a2 + t2);
    }
    const double overlap2 = std::norm(phi.dot(k * psi));
    t.valid = t.cos_upsilon > kMinCosUpsilon;
    if (t.valid) {
        t.term_cos = overlap2 / (k_phi * t.cos_upsilon);
        t.term_cos2 = overlap2 / (k_phi * t.cos_upsilon * t.cos_upsilon);
    }
    return t;
}

namespace detail {
inline BoundReport theorem3_from_parts(const ComplexMatrix& k, const ComplexVector& psi, const ComplexVector& phi,
                                       double comm, double sum) {
    BoundReport r;
    r.name = "theorem3_bh";
    r.direction = Direction::lower;
    r.target = sum;
    const BauerHouseholderTerm t = bauer_householder_term(k, psi, phi);
    r.valid = t.valid;
    r.boundValue = t.valid ? comm + t.term_cos : comm;
    r.diagnostics["commutator"] = comm;
    r.diagnostics["cos_upsilon"] = t.cos_upsilon;
    r.diagnostics["theta"] = t.theta;
    r.diagnostics["alpha"] = t.alpha;
    r.diagnostics["bound_cos2"] = t.valid ? comm + t.term_cos2 : comm;
    return r;
}
}  // namespace detail

/// Pure-state form: |<[A,B]>| + |<phi|K|psi>|^2 / (<phi|K|phi> cos U).
/// The cos^2 U variant is in diagnostics["bound_cos2"]; it is never smaller.
inline BoundReport theorem3_bh_bound(const StateVector& psi, const ComplexMatrix& a, const ComplexMatrix& b,
                                     const StateVector& phi) {
    const DensityMatrix rho = psi.density();
    detail::check_observables(rho, a, b);
    require_same_dim(psi.dim(), phi.dim(), "theorem3 phi");
    const UncertaintyMatrix u = canonical_K(rho, a, b);
    return detail::theorem3_from_parts(u.K, psi.vector(), phi.vector(), commutator_expect(rho, a, b),
                                       sum_variances(rho, a, b));
}

/// Mixed-state form: psi -> |sqrt(rho)>, K -> I (x) K, phi lives in C^{d^2}.
inline BoundReport theorem3_bh_bound(const DensityMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b,
                                     const StateVector& phi) {
    detail::check_observables(rho, a, b);
    require_same_dim(phi.dim(), rho.dim() * rho.dim(), "theorem3 phi (needs d^2 entries)");
    const UncertaintyMatrix u = canonical_K(rho, a, b);
    const ComplexVector psi = vectorize(herm_sqrt(rho));
    BoundReport r = detail::theorem3_from_parts(lift_left(u.K), psi, phi.vector(), commutator_expect(rho, a, b),
                                                sum_variances(rho, a, b));
    r.diagnostics["vectorized"] = 1.0;
    return r;
}

/// The equality-condition-2 pair for K: with |max>, |min> its extreme eigenvectors and m = cos(theta),
///   psi = (xi sqrt(1+m)|max> - eta sqrt(1-m)|min>)/sqrt2,  phi = eps (xi sqrt(1+m)|max> + eta sqrt(1-m)|min>)/sqrt2.
struct EqualityPair {
    ComplexVector psi;
    ComplexVector phi;
};

inline EqualityPair condition2_pair(const ComplexMatrix& k, double m, cplx xi = 1.0, cplx eta = 1.0,
                                    cplx eps = 1.0) {
    if (m < 0.0 || m > 1.0) throw ParamError("m = cos(theta) must lie in [0, 1]");
    const EigenSystem es = herm_eig(k);
    const ComplexVector vmax = es.vectors.col(es.dim() - 1);
    const ComplexVector vmin = es.vectors.col(0);
    const double p = std::sqrt(1.0 + m);
    const double q = std::sqrt(1.0 - m);
    EqualityPair out;
    out.psi = (xi * p * vmax - eta * q * vmin) / std::numbers::sqrt2;
    out.phi = eps * (xi * p * vmax + eta * q * vmin) / std::numbers::sqrt2;
    return out;
}

/// Condition-2 companion of an arbitrary psi: flip the sign of its |min> component.
inline std::optional<ComplexVector> condition2_partner(const ComplexMatrix& k, const ComplexVector& psi) {
    const EigenSystem es = herm_eig(k);
    const ComplexVector vmax = es.vectors.col(es.dim() - 1);
    const ComplexVector vmin = es.vectors.col(0);
    const ComplexVector phi = vmax * vmax.dot(psi) - vmin * vmin.dot(psi);
    if (phi.norm() < 1e-12) return std::nullopt;
    return ComplexVector(phi / phi.norm());
}

struct Theorem3Options {
    bool include_self = true;  // the saturating candidate phi = psi
    bool orthogonal_only = false;
};

namespace detail {
inline BoundReport theorem3_optimize(const ComplexMatrix& k, const ComplexVector& psi, double comm, double sum,
                                     int trials, Rng& rng, const Theorem3Options& opt) {
    if (trials < 1) throw ParamError("trials must be >= 1");
    std::vector<ComplexVector> candidates;
    auto push = [&](ComplexVector v) {
        if (opt.orthogonal_only) v -= psi * psi.dot(v);
        if (v.norm() > 1e-12) candidates.push_back(v / v.norm());
    };
    if (opt.include_self && !opt.orthogonal_only) push(psi);
    if (auto p = condition2_partner(k, psi)) push(*p);
    for (int i = 0; i < trials; ++i) push(complex_gaussian_vector(psi.size(), rng));

    BoundReport best;
    best.name = "theorem3_optimized";
    best.direction = Direction::lower;
    best.target = sum;
    best.boundValue = comm;
    double best_cos2 = comm;
    int valid_count = 0;
    for (const auto& phi : candidates) {
        BauerHouseholderTerm t;
        try {
            t = bauer_householder_term(k, psi, phi);
        } catch (const InvalidAngle&) {
            continue;
        }
        if (!t.valid) continue;
        ++valid_count;
        if (comm + t.term_cos > best.boundValue) {
            best.boundValue = comm + t.term_cos;
            best.diagnostics["theta"] = t.theta;
        }
        best_cos2 = std::max(best_cos2, comm + t.term_cos2);
    }
    best.diagnostics["bound_cos2"] = best_cos2;
    best.diagnostics["candidates"] = static_cast<double>(candidates.size());
    best.diagnostics["valid_candidates"] = valid_count;
    best.diagnostics["commutator"] = comm;
    return best;
}
}  // namespace detail

/// Best Bauer-Householder bound over trials Haar-random phi plus the two analytic candidates.
inline BoundReport theorem3_optimized(const StateVector& psi, const ComplexMatrix& a, const ComplexMatrix& b,
                                      int trials, Rng& rng, const Theorem3Options& opt = {}) {
    const DensityMatrix rho = psi.density();
    detail::check_observables(rho, a, b);
    const UncertaintyMatrix u = canonical_K(rho, a, b);
    return detail::theorem3_optimize(u.K, psi.vector(), commutator_expect(rho, a, b), sum_variances(rho, a, b),
                                     trials, rng, opt);
}

inline BoundReport theorem3_optimized(const DensityMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b,
                                      int trials, Rng& rng, const Theorem3Options& opt = {}) {
    detail::check_observables(rho, a, b);
    const UncertaintyMatrix u = canonical_K(rho, a, b);
    return detail::theorem3_optimize(lift_left(u.K), vectorize(herm_sqrt(rho)), commutator_expect(rho, a, b),
                                     sum_variances(rho, a, b), trials, rng, opt);
}

}  // namespace qunc
