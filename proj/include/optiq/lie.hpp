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

#ifndef OPTIQ_LIE_HPP
#define OPTIQ_LIE_HPP

#include <cstddef>
#include <vector>

#include "optiq/fock.hpp"
#include "optiq/matrix.hpp"

namespace optiq {

/// Bi-invariant inner product 1/2 tr(u^dagger v + v^dagger u); its norm is Frobenius.
double inner(const AlgebraElement& u, const AlgebraElement& v);
double inner(const Matrix& u, const Matrix& v);

/**
 * Where the logarithm puts the eigenangle of an eigenvalue on the negative
 * real axis. Both choices give a minimal-norm logarithm.
 *
 *  - upper: angles in (-pi, pi], so -1 -> +i pi
 *  - lower: angles in [-pi, pi), so -1 -> -i pi
 */
enum class BranchCut {
    upper,
    lower,
};

/// Angles within this distance of the excluded end of the range are folded onto
/// the included end.
inline constexpr double kBranchFoldTolerance = 1e-12;

/// Principal anti-Hermitian logarithm of a unitary via complex Schur factorization.
AlgebraElement principal_log(const UnitaryMatrix& u, BranchCut branch = BranchCut::upper);

/// Eigenangles of a unitary (Schur diagonal) in the requested range, ascending.
std::vector<double> eigenangles(const UnitaryMatrix& u, BranchCut branch = BranchCut::upper);

/// exp of an anti-Hermitian matrix through the eigendecomposition of -iv.
UnitaryMatrix matrix_exp(const AlgebraElement& v);

/// Frobenius distance ||a - b||.
double distance(const UnitaryMatrix& a, const UnitaryMatrix& b);

/**
 * Orthonormal basis {b_i} of the image algebra im d phi in u(M), paired with
 * preimages {g_i} in u(m) such that dphi(g_i) = b_i. Immutable once built.
 */
class ImageBasis {
public:
    ImageBasis(FockBasis basis, std::vector<AlgebraElement> elements,
               std::vector<AlgebraElement> preimages);

    const FockBasis& fock_basis() const noexcept { return basis_; }
    const std::vector<AlgebraElement>& elements() const noexcept { return elements_; }
    const std::vector<AlgebraElement>& preimages() const noexcept { return preimages_; }
    std::size_t size() const noexcept { return elements_.size(); }

    /// Checks orthonormality and dphi(g_i) = b_i; throws internal_consistency.
    void validate(double tolerance = 1e-9) const;

private:
    FockBasis basis_;
    std::vector<AlgebraElement> elements_;
    std::vector<AlgebraElement> preimages_;
};

/// Gram-Schmidt vectors with norm below this signal a rank-deficient dphi.
inline constexpr double kRankDropTolerance = 1e-8;

/// The m^2 generators i E_jj, E_jk - E_kj, i(E_jk + E_kj) (j < k) of u(m).
std::vector<AlgebraElement> canonical_algebra_basis(int modes);

/**
 * Lifts the canonical u(m) basis through dphi and orthonormalizes it with
 * modified Gram-Schmidt (two passes), applying the same combinations to the
 * preimages.
 */
ImageBasis build_image_basis(const FockBasis& basis);

struct Projection {
    AlgebraElement tangent;
    AlgebraElement normal;
    std::vector<double> coefficients;
};

/// Orthogonal split v = v_T + v_N with v_T in im d phi.
Projection project(const AlgebraElement& v, const ImageBasis& image);

/// sum_i c_i g_i in u(m), the preimage of sum_i c_i b_i.
AlgebraElement lift_coefficients(const std::vector<double>& coefficients, const ImageBasis& image);

} // namespace optiq

#endif
