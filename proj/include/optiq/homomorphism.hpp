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

#ifndef OPTIQ_HOMOMORPHISM_HPP
#define OPTIQ_HOMOMORPHISM_HPP

#include "optiq/fock.hpp"
#include "optiq/matrix.hpp"

namespace optiq {

/**
 * Permanent of a square complex matrix.
 *
 * Ryser's inclusion-exclusion formula with Gray-code subset order, so each
 * subset update touches a single column: O(2^k k). per of the empty matrix is 1.
 */
Complex permanent(const Matrix& a);

/// Reference permanent by explicit sum over all k! permutations.
Complex permanent_naive(const Matrix& a);

/**
 * Photonic homomorphism phi: U(m) -> U(M).
 *
 * <out|phi(S)|in> = per(S[out|in]) / sqrt(prod out_j! prod in_k!), where
 * S[out|in] repeats row j of S out_j times and column k in_k times. Input
 * modes index the columns of S.
 */
UnitaryMatrix phi(const UnitaryMatrix& scattering, const FockBasis& basis);

/// Same map without the unitarity contract, for matrices that only
/// approximate a scattering matrix (printed values, perturbation checks).
Matrix phi_general(const Matrix& scattering, const FockBasis& basis);

/**
 * Differential d phi: u(m) -> u(M), the second-quantized operator
 * sum_{j,k} A_jk a_j^dagger a_k written in the Fock basis.
 */
AlgebraElement dphi(const AlgebraElement& generator, const FockBasis& basis);

/// Linear in its argument, so any complex m x m matrix is accepted.
Matrix dphi_general(const Matrix& generator, const FockBasis& basis);

/// exp(dphi(A)); equals phi(exp(A)) by the homomorphism property.
UnitaryMatrix exp_lift(const AlgebraElement& generator, const FockBasis& basis);

} // namespace optiq

#endif
