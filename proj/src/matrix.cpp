/*
 * Copyright 2026 The optiq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "optiq/error.hpp"
#include "optiq/matrix.hpp"

#include <sstream>

namespace optiq {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::shape: return "shape";
    case ErrorKind::not_unitary: return "not-unitary";
    case ErrorKind::not_anti_hermitian: return "not-anti-hermitian";
    case ErrorKind::dimension_overflow: return "dimension-overflow";
    case ErrorKind::dimension_limit: return "dimension-limit";
    case ErrorKind::invalid_ordering: return "invalid-ordering";
    case ErrorKind::unknown_state: return "unknown-state";
    case ErrorKind::rank_deficiency: return "rank-deficiency";
    case ErrorKind::internal_consistency: return "internal-consistency";
    case ErrorKind::numerical_instability: return "numerical-instability";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::malformed_plan: return "malformed-plan";
    case ErrorKind::parse: return "parse";
    case ErrorKind::io: return "io";
    }
    return "unknown";
}

double unitarity_residual(const Matrix& a) {
    return (a.adjoint() * a - Matrix::Identity(a.rows(), a.cols())).norm();
}

double anti_hermiticity_residual(const Matrix& a) {
    return (a + a.adjoint()).norm();
}

namespace {

void require_square(const Matrix& a, const char* what) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        std::ostringstream os;
        os << what << " must be a non-empty square matrix, got " << a.rows() << "x" << a.cols();
        throw Error(ErrorKind::shape, os.str());
    }
}

} // namespace

UnitaryMatrix UnitaryMatrix::checked(Matrix entries, double tolerance_per_dim) {
    require_square(entries, "unitary matrix");
    const double residual = unitarity_residual(entries);
    const double limit = tolerance_per_dim * static_cast<double>(entries.rows());
    if (!(residual <= limit)) {
        std::ostringstream os;
        os << "matrix is not unitary: ||A^dagger A - Id||_F = " << residual << " exceeds " << limit;
        throw Error(ErrorKind::not_unitary, os.str());
    }
    return UnitaryMatrix(std::move(entries));
}

UnitaryMatrix UnitaryMatrix::trusted(Matrix entries) {
    return UnitaryMatrix(std::move(entries));
}

UnitaryMatrix UnitaryMatrix::identity(Index dim) {
    return UnitaryMatrix(Matrix::Identity(dim, dim));
}

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::shape, "unitary product of mismatched dimensions");
    }
    return UnitaryMatrix(a.entries_ * b.entries_);
}

AlgebraElement AlgebraElement::checked(Matrix entries, double tolerance_per_dim) {
    require_square(entries, "algebra element");
    const double residual = anti_hermiticity_residual(entries);
    const double limit = tolerance_per_dim * static_cast<double>(entries.rows());
    if (!(residual <= limit)) {
        std::ostringstream os;
        os << "matrix is not anti-Hermitian: ||A + A^dagger||_F = " << residual << " exceeds "
           << limit;
        throw Error(ErrorKind::not_anti_hermitian, os.str());
    }
    return AlgebraElement(std::move(entries));
}

AlgebraElement AlgebraElement::trusted(Matrix entries) {
    Matrix skew = 0.5 * (entries - entries.adjoint());
    return AlgebraElement(std::move(skew));
}

AlgebraElement AlgebraElement::zero(Index dim) {
    return AlgebraElement(Matrix::Zero(dim, dim));
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    return AlgebraElement(a.entries_ + b.entries_);
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    return AlgebraElement(a.entries_ - b.entries_);
}

AlgebraElement operator*(double s, const AlgebraElement& a) {
    return AlgebraElement(s * a.entries_);
}

AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b) {
    return AlgebraElement(a.entries_ * b.entries_ - b.entries_ * a.entries_);
}

UnitaryMatrix nearest_unitary(const Matrix& a) {
    require_square(a, "matrix");
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return UnitaryMatrix::trusted(svd.matrixU() * svd.matrixV().adjoint());
}

} // namespace optiq
