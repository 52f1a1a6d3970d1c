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

#include <algorithm>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qunc {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;

inline constexpr cplx I_unit{0.0, 1.0};

/// Shared absolute tolerance. Becomes relative once the matrix norm exceeds 1.
inline constexpr double kTol = 1e-10;

/// Eigenvalues of PSD inputs in (-kClamp, 0) are treated as zero.
inline constexpr double kClamp = 1e-12;

inline double scaled_tol(double norm, double tol = kTol) { return tol * std::max(1.0, norm); }

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define QUNC_DEFINE_ERROR(Name)                                                 \
    class Name : public Error {                                                 \
    public:                                                                     \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}   \
    }

QUNC_DEFINE_ERROR(NotHermitian);
QUNC_DEFINE_ERROR(DomainError);
QUNC_DEFINE_ERROR(DimensionError);
QUNC_DEFINE_ERROR(InvalidState);
QUNC_DEFINE_ERROR(NotOrthogonal);
QUNC_DEFINE_ERROR(InvalidAngle);
QUNC_DEFINE_ERROR(DegenerateK);
QUNC_DEFINE_ERROR(ParamError);
QUNC_DEFINE_ERROR(IntegrationDiverged);
QUNC_DEFINE_ERROR(RealStateRequired);
QUNC_DEFINE_ERROR(ConfigError);

#undef QUNC_DEFINE_ERROR

// ---------------------------------------------------------------------------
// Small helpers

inline double max_asymmetry(const ComplexMatrix& h) { return (h - h.adjoint()).cwiseAbs().maxCoeff(); }

inline bool is_hermitian(const ComplexMatrix& h, double tol = kTol) {
    if (h.rows() != h.cols()) return false;
    if (h.size() == 0) return true;
    return max_asymmetry(h) <= scaled_tol(h.norm(), tol);
}

inline void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw DimensionError(std::string(what) + " must be a nonempty square matrix");
}

inline void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
    if (a != b) throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                                     std::to_string(b) + ")");
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

inline ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b + b * a; }

}  // namespace qunc
