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

#ifndef OPTIQ_MATRIX_HPP
#define OPTIQ_MATRIX_HPP

#include <complex>

#include <Eigen/Dense>

namespace optiq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Per-dimension tolerance used when validating untrusted unitary or
/// anti-Hermitian input: the residual must not exceed this times the dimension.
inline constexpr double kStructureTolerance = 1e-9;

/// ||A^dagger A - Id||_F
double unitarity_residual(const Matrix& a);

/// ||A + A^dagger||_F
double anti_hermiticity_residual(const Matrix& a);

/**
 * Dense complex square matrix known to be unitary.
 *
 * Construction from untrusted data goes through checked(), which validates
 * the residual against kStructureTolerance * dim. Library-internal products
 * of unitaries use trusted().
 */
class UnitaryMatrix {
public:
    UnitaryMatrix() = default;

    static UnitaryMatrix checked(Matrix entries, double tolerance_per_dim = kStructureTolerance);
    static UnitaryMatrix trusted(Matrix entries);
    static UnitaryMatrix identity(Index dim);

    const Matrix& matrix() const noexcept { return entries_; }
    Index dim() const noexcept { return entries_.rows(); }
    Complex operator()(Index row, Index col) const { return entries_(row, col); }

    UnitaryMatrix adjoint() const { return trusted(entries_.adjoint()); }

    friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b);

private:
    explicit UnitaryMatrix(Matrix entries) : entries_(std::move(entries)) {}
    Matrix entries_;
};

/// Dense complex anti-Hermitian matrix: an element of u(d).
class AlgebraElement {
public:
    AlgebraElement() = default;

    static AlgebraElement checked(Matrix entries, double tolerance_per_dim = kStructureTolerance);
    /// Skips validation but removes the Hermitian part left by roundoff.
    static AlgebraElement trusted(Matrix entries);
    static AlgebraElement zero(Index dim);

    const Matrix& matrix() const noexcept { return entries_; }
    Index dim() const noexcept { return entries_.rows(); }
    Complex operator()(Index row, Index col) const { return entries_(row, col); }

    double norm() const { return entries_.norm(); }

    friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator*(double s, const AlgebraElement& a);

    /// Matrix commutator [a, b] = ab - ba, which stays in the algebra.
    friend AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b);

private:
    explicit AlgebraElement(Matrix entries) : entries_(std::move(entries)) {}
    Matrix entries_;
};

/// Nearest unitary in Frobenius norm (polar factor), via SVD.
UnitaryMatrix nearest_unitary(const Matrix& a);

} // namespace optiq

#endif
