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

#include "optiq/homomorphism.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <vector>

#include "optiq/error.hpp"
#include "optiq/lie.hpp"

namespace optiq {

namespace {

void require_square(const Matrix& a, const char* what) {
    if (a.rows() != a.cols()) {
        std::ostringstream os;
        os << what << " needs a square matrix, got " << a.rows() << "x" << a.cols();
        throw Error(ErrorKind::shape, os.str());
    }
}

void require_modes(const Matrix& a, const FockBasis& basis, const char* what) {
    require_square(a, what);
    if (a.rows() != basis.modes()) {
        std::ostringstream os;
        os << what << ": matrix is " << a.rows() << "x" << a.cols() << " but the basis has "
           << basis.modes() << " modes";
        throw Error(ErrorKind::shape, os.str());
    }
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

/// Mode indices with multiplicity: (2,0,1) -> {0,0,2}.
std::vector<Index> expand_modes(const FockState& s) {
    std::vector<Index> out;
    for (int j = 0; j < s.modes(); ++j) {
        out.insert(out.end(), static_cast<std::size_t>(s.occupations[j]), j);
    }
    return out;
}

} // namespace

Complex permanent(const Matrix& a) {
    require_square(a, "permanent");
    const Index k = a.rows();
    if (k == 0) return Complex(1.0, 0.0);
    if (k > 62) throw Error(ErrorKind::invalid_argument, "permanent order too large for Ryser");

    // per(A) = (-1)^k sum_{S} (-1)^{|S|} prod_i sum_{j in S} a_ij over non-empty
    // column subsets S, visited in Gray-code order.
    Eigen::VectorXcd row_sums = Eigen::VectorXcd::Zero(k);
    Complex total(0.0, 0.0);
    const std::uint64_t subsets = std::uint64_t{1} << k;
    std::uint64_t gray = 0;
    for (std::uint64_t g = 1; g < subsets; ++g) {
        const int col = std::countr_zero(g);
        const std::uint64_t bit = std::uint64_t{1} << col;
        gray ^= bit;
        if (gray & bit) {
            row_sums += a.col(col);
        } else {
            row_sums -= a.col(col);
        }
        const Complex prod = row_sums.prod();
        if (std::popcount(gray) % 2 == 0) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    return (k % 2 == 0) ? total : -total;
}

Complex permanent_naive(const Matrix& a) {
    require_square(a, "permanent");
    const Index k = a.rows();
    std::vector<Index> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), Index{0});
    Complex total(0.0, 0.0);
    do {
        Complex term(1.0, 0.0);
        for (Index i = 0; i < k; ++i) term *= a(i, perm[static_cast<std::size_t>(i)]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

Matrix phi_general(const Matrix& scattering, const FockBasis& basis) {
    require_modes(scattering, basis, "phi");
    const auto dim = static_cast<Index>(basis.size());
    const int n = basis.photons();

    std::vector<std::vector<Index>> expanded;
    std::vector<double> norms;
    expanded.reserve(basis.size());
    norms.reserve(basis.size());
    for (const FockState& s : basis.states()) {
        expanded.push_back(expand_modes(s));
        double f = 1.0;
        for (int k : s.occupations) f *= factorial(k);
        norms.push_back(std::sqrt(f));
    }

    Matrix out(dim, dim);
    Matrix sub(n, n);
    for (Index p = 0; p < dim; ++p) {
        const auto& rows = expanded[static_cast<std::size_t>(p)];
        for (Index q = 0; q < dim; ++q) {
            const auto& cols = expanded[static_cast<std::size_t>(q)];
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) {
                    sub(r, c) = scattering(rows[static_cast<std::size_t>(r)],
                                           cols[static_cast<std::size_t>(c)]);
                }
            }
            out(p, q) = permanent(sub) /
                        (norms[static_cast<std::size_t>(p)] * norms[static_cast<std::size_t>(q)]);
        }
    }
    return out;
}

UnitaryMatrix phi(const UnitaryMatrix& scattering, const FockBasis& basis) {
    return UnitaryMatrix::trusted(phi_general(scattering.matrix(), basis));
}

Matrix dphi_general(const Matrix& generator, const FockBasis& basis) {
    require_modes(generator, basis, "dphi");
    const auto dim = static_cast<Index>(basis.size());
    const int m = basis.modes();
    Matrix out = Matrix::Zero(dim, dim);
    std::vector<int> shifted;
    for (Index q = 0; q < dim; ++q) {
        const auto& occ = basis.state(static_cast<std::size_t>(q)).occupations;
        for (int k = 0; k < m; ++k) {
            if (occ[k] == 0) continue;
            out(q, q) += generator(k, k) * static_cast<double>(occ[k]);
            for (int j = 0; j < m; ++j) {
                if (j == k) continue;
                // a_j^dagger a_k |q> = sqrt(q_k (q_j + 1)) |q - e_k + e_j>
                shifted = occ;
                --shifted[k];
                ++shifted[j];
                const Index p = static_cast<Index>(basis.index_of(shifted));
                out(p, q) += generator(j, k) * std::sqrt(static_cast<double>(occ[k]) * (occ[j] + 1));
            }
        }
    }
    return out;
}

AlgebraElement dphi(const AlgebraElement& generator, const FockBasis& basis) {
    return AlgebraElement::trusted(dphi_general(generator.matrix(), basis));
}

UnitaryMatrix exp_lift(const AlgebraElement& generator, const FockBasis& basis) {
    return matrix_exp(dphi(generator, basis));
}

} // namespace optiq
