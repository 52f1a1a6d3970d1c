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

// Qubit closed forms: purity of the normalized uncertainty matrix for A = sigma.n1,
// B = sigma.n2, and the concurrence of a column-stacked qubit state.

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "qunc/bounds.hpp"
#include "qunc/states.hpp"

namespace qunc {

struct PurityRecord {
    double angle = 0.0;        // between n1 and n2, radians
    double blochRadius = 0.0;  // |R| of K/Tr K, closed form
    double approx = 0.0;       // sqrt(1 - (n1.n2)^2)
    Vec3 bloch = Vec3::Zero(); // closed-form R
    Vec3 directBloch = Vec3::Zero();
    double crossCheck = 0.0;   // max deviation closed form vs direct matrix
};

/// Bloch vector of K_+/Tr K_+ for rho = (I + r.sigma)/2, A = sigma.n1, B = sigma.n2:
///   R = [(n1 x n2) - (p1 n1 + p2 n2)] / (1 + p1^2/2 + p2^2/2),   p_i = r.n_i,
///   |R| = sqrt(a b - g^2) / ((a + b)/2),  a = 1 + p1^2, b = 1 + p2^2, g = p1 p2 - n1.n2.
inline PurityRecord normalized_K_bloch(const BlochVector& r, const Vec3& n1, const Vec3& n2) {
    if (std::abs(n1.norm() - 1.0) > kTol || std::abs(n2.norm() - 1.0) > kTol)
        throw ParamError("n1, n2 must be unit vectors");
    const double p1 = r.r.dot(n1);
    const double p2 = r.r.dot(n2);
    const double c = std::clamp(n1.dot(n2), -1.0, 1.0);

    PurityRecord rec;
    rec.angle = std::acos(c);
    rec.bloch = (n1.cross(n2) - (p1 * n1 + p2 * n2)) / (1.0 + 0.5 * p1 * p1 + 0.5 * p2 * p2);
    const double a = 1.0 + p1 * p1;
    const double b = 1.0 + p2 * p2;
    const double g = p1 * p2 - c;
    rec.blochRadius = std::sqrt(std::max(0.0, a * b - g * g)) / (0.5 * (a + b));
    rec.approx = std::sqrt(std::max(0.0, 1.0 - c * c));

    const DensityMatrix rho = qubit_from_bloch(r);
    const UncertaintyMatrix u = uncertainty_matrix(rho, pauli::along(n1), pauli::along(n2), +1);
    const ComplexMatrix sig = u.K / u.traceK;
    rec.directBloch =
        Vec3((sig * pauli::X()).trace().real(), (sig * pauli::Y()).trace().real(), (sig * pauli::Z()).trace().real());
    rec.crossCheck = std::max((rec.bloch - rec.directBloch).cwiseAbs().maxCoeff(),
                              std::abs(rec.blochRadius - rec.directBloch.norm()));
    return rec;
}

inline double almost_pure_approx(const Vec3& n1, const Vec3& n2) {
    const double c = n1.dot(n2);
    return std::sqrt(std::max(0.0, 1.0 - c * c));
}

// ---------------------------------------------------------------------------
// Concurrence of the vectorized state

/// Sum of |off-diagonal| entries in the computational basis.
inline double l1_coherence(const DensityMatrix& rho) {
    double c = 0.0;
    for (Eigen::Index i = 0; i < rho.dim(); ++i)
        for (Eigen::Index j = 0; j < rho.dim(); ++j)
            if (i != j) c += std::abs(rho(i, j));
    return c;
}

/// 2|ad - bc| for a normalized two-qubit amplitude vector (a, b, c, d).
inline double two_qubit_concurrence(const ComplexVector& v) {
    require_same_dim(v.size(), 4, "two-qubit concurrence");
    const ComplexVector u = v / v.norm();
    return 2.0 * std::abs(u(0) * u(3) - u(1) * u(2));
}

struct ConcurrenceCheck {
    double formula = 0.0;   // |1 + P^2 - 2C^2| / |1 + P^2 - C^2/2|
    double direct = 0.0;    // concurrence of the normalized |rho>
    double residual = 0.0;
    double purityP = 0.0;   // |r|
    double coherence = 0.0; // C_l1
    double normSqDirect = 0.0;   // <rho|rho> before normalization, = (1 + P^2)/2
    double normSqPrinted = 0.0;  // (2 + rx^2 - ry^2 + 2 rz^2)/4, same scale as normSqDirect
    bool normMismatch = false;
};

/// Both sides of the purity / coherence / concurrence relation for a real qubit state.
inline ConcurrenceCheck concurrence_identity_check(const BlochVector& r) {
    if (std::abs(r.y()) > kTol) throw RealStateRequired("r_y = " + std::to_string(r.y()));
    const DensityMatrix rho = qubit_from_bloch(r);
    ConcurrenceCheck out;
    out.purityP = r.norm();
    out.coherence = l1_coherence(rho);
    const double p2 = out.purityP * out.purityP;
    const double c2 = out.coherence * out.coherence;
    out.formula = std::abs(1.0 + p2 - 2.0 * c2) / std::abs(1.0 + p2 - 0.5 * c2);

    const ComplexVector v = vectorize(rho.matrix());
    out.normSqDirect = v.squaredNorm();
    out.normSqPrinted = (2.0 + r.x() * r.x() - r.y() * r.y() + 2.0 * r.z() * r.z()) / 4.0;
    out.normMismatch = std::abs(out.normSqDirect - out.normSqPrinted) > 1e-12;
    out.direct = two_qubit_concurrence(v);
    out.residual = std::abs(out.formula - out.direct);
    return out;
}

struct GeneralConcurrence {
    double direct = 0.0;
    double printed = 0.0;  // 2|alpha|^2 |1 + rz^2 - rx^2 - ry^2| with the printed alpha
    double imaginarity = 0.0;  // |r_y|
};

/// Any qubit state (r_y allowed): reported, not asserted.
inline GeneralConcurrence concurrence_general(const BlochVector& r) {
    const DensityMatrix rho = qubit_from_bloch(r);
    GeneralConcurrence g;
    g.direct = two_qubit_concurrence(vectorize(rho.matrix()));
    const double alpha_sq = 1.0 / (2.0 + r.x() * r.x() - r.y() * r.y() + 2.0 * r.z() * r.z());
    g.printed = 2.0 * alpha_sq * std::abs(1.0 + r.z() * r.z() - r.x() * r.x() - r.y() * r.y());
    g.imaginarity = std::abs(r.y());
    return g;
}

// ---------------------------------------------------------------------------
// Purity vs incompatibility scatter

struct ScatterPoint {
    double angle = 0.0;
    double blochRadius = 0.0;
    double purity = 0.0;  // Tr rho^2
};

/// One sample: HS-random qubit rho, independent uniform n1, n2.
inline ScatterPoint purity_scatter_sample(Rng& rng) {
    const BlochVector r = random_qubit_bloch(rng);
    const Vec3 n1 = random_unit_vec3(rng);
    const Vec3 n2 = random_unit_vec3(rng);
    const PurityRecord rec = normalized_K_bloch(r, n1, n2);
    return {rec.angle, rec.blochRadius, 0.5 * (1.0 + r.r.squaredNorm())};
}

inline std::vector<ScatterPoint> purity_scatter(std::size_t samples, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<ScatterPoint> pts;
    pts.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) pts.push_back(purity_scatter_sample(rng));
    return pts;
}

struct TrendResult {
    std::vector<double> mean, stderr_, fit;
    std::vector<std::size_t> count;
    double maxZ = 0.0;  // max |mean - fit| / stderr
    bool passes = false;
};

/// Weighted pool-adjacent-violators fit of a nondecreasing sequence.
inline std::vector<double> isotonic_fit(const std::vector<double>& y, const std::vector<double>& w) {
    struct Block { double sum_wy, sum_w; std::size_t len; };
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < y.size(); ++i) {
        blocks.push_back({w[i] * y[i], w[i], 1});
        while (blocks.size() > 1) {
            const Block& b = blocks.back();
            const Block& a = blocks[blocks.size() - 2];
            if (a.sum_wy / a.sum_w <= b.sum_wy / b.sum_w) break;
            Block merged{a.sum_wy + b.sum_wy, a.sum_w + b.sum_w, a.len + b.len};
            blocks.pop_back();
            blocks.back() = merged;
        }
    }
    std::vector<double> out;
    for (const auto& b : blocks) out.insert(out.end(), b.len, b.sum_wy / b.sum_w);
    return out;
}

/// Bins sin(angle) into equal-width bins on [0, 1]; passes when every bin mean of |R| sits
/// within `z` standard errors of the best nondecreasing fit.
inline TrendResult purity_trend_check(const std::vector<ScatterPoint>& pts, int bins = 5, double z = 2.0) {
    TrendResult t;
    std::vector<double> sum(bins, 0.0), sumsq(bins, 0.0);
    t.count.assign(bins, 0);
    for (const auto& p : pts) {
        const double x = std::sin(p.angle);
        const int b = std::clamp(static_cast<int>(x * bins), 0, bins - 1);
        sum[b] += p.blochRadius;
        sumsq[b] += p.blochRadius * p.blochRadius;
        ++t.count[b];
    }
    std::vector<double> w(bins);
    for (int b = 0; b < bins; ++b) {
        const double n = static_cast<double>(t.count[b]);
        if (n < 2) {
            t.passes = false;
            return t;
        }
        const double m = sum[b] / n;
        const double var = std::max(0.0, (sumsq[b] - n * m * m) / (n - 1.0));
        t.mean.push_back(m);
        t.stderr_.push_back(std::sqrt(var / n));
        w[b] = 1.0 / std::max(t.stderr_.back() * t.stderr_.back(), 1e-300);
    }
    t.fit = isotonic_fit(t.mean, w);
    for (int b = 0; b < bins; ++b) t.maxZ = std::max(t.maxZ, std::abs(t.mean[b] - t.fit[b]) / t.stderr_[b]);
    t.passes = t.maxZ <= z;
    return t;
}

}  // namespace qunc
