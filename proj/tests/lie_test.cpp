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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "optiq/approx.hpp"
#include "optiq/error.hpp"
#include "optiq/homomorphism.hpp"
#include "optiq/lie.hpp"
#include "test_util.hpp"

namespace optiq {
namespace {

using testing::max_entry_error;
using testing::random_anti_hermitian;

constexpr double kPi = std::numbers::pi;

TEST(Inner, Examples) {
    std::mt19937_64 rng(1);
    const Matrix u = random_anti_hermitian(4, rng, 2.0);
    EXPECT_NEAR(inner(u, u), u.squaredNorm(), 1e-12);

    Matrix e11 = Matrix::Zero(2, 2);
    Matrix e22 = Matrix::Zero(2, 2);
    e11(0, 0) = Complex(0, 1);
    e22(1, 1) = Complex(0, 1);
    EXPECT_EQ(inner(e11, e22), 0.0);

    for (int trial = 0; trial < 20; ++trial) {
        const Matrix a = random_anti_hermitian(5, rng);
        const Matrix b = random_anti_hermitian(5, rng);
        Complex oracle(0.0);
        for (Index j = 0; j < 5; ++j) {
            for (Index k = 0; k < 5; ++k) oracle -= a(j, k) * b(k, j);
        }
        EXPECT_NEAR(oracle.imag(), 0.0, 1e-12);
        EXPECT_NEAR(inner(a, b), oracle.real(), 1e-12);
        EXPECT_NEAR(inner(a, b), inner(b, a), 1e-14);
    }
}

TEST(Inner, PositiveDefinite) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> scale(1e-3, 10.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const Matrix u = random_anti_hermitian(1 + trial % 6, rng, scale(rng));
        EXPECT_GT(inner(u, u), 0.0);
    }
}

TEST(Inner, ShapeMismatch) {
    EXPECT_THROW(inner(Matrix::Zero(2, 2), Matrix::Zero(3, 3)), Error);
}

TEST(PrincipalLog, Identity) {
    EXPECT_EQ(principal_log(UnitaryMatrix::identity(4)).norm(), 0.0);
}

TEST(PrincipalLog, MinusIdentityFollowsBranch) {
    const UnitaryMatrix minus = UnitaryMatrix::checked(-Matrix::Identity(2, 2));
    EXPECT_LT((principal_log(minus).matrix() - Complex(0, kPi) * Matrix::Identity(2, 2)).norm(), 1e-14);
    EXPECT_LT((principal_log(minus, BranchCut::lower).matrix() -
               Complex(0, -kPi) * Matrix::Identity(2, 2))
                  .norm(),
              1e-14);
    for (double angle : eigenangles(minus)) EXPECT_EQ(angle, kPi);
}

TEST(PrincipalLog, QftReferenceLogarithm) {
    const UnitaryMatrix u = UnitaryMatrix::checked(testing::qft3());
    // The printed logarithm places the -1 eigenvalue at -pi.
    const AlgebraElement lower = principal_log(u, BranchCut::lower);
    EXPECT_LT(max_entry_error(lower.matrix(), testing::printed_log_u()), 1e-4);
    EXPECT_NEAR(lower(0, 0).imag(), -0.6639, 1e-4);
    EXPECT_NEAR(lower.matrix().trace().imag(), -1.5 * kPi, 1e-12);

    const AlgebraElement upper = principal_log(u);
    EXPECT_NEAR(upper.matrix().trace().imag(), 0.5 * kPi, 1e-12);
    EXPECT_NEAR(upper.norm(), lower.norm(), 1e-12);
    EXPECT_LT((matrix_exp(upper).matrix() - u.matrix()).norm(), 1e-12);
    EXPECT_LT((matrix_exp(lower).matrix() - u.matrix()).norm(), 1e-12);
}

TEST(PrincipalLog, RoundTripAndAngleRange) {
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = 1 + trial % 10;
        const UnitaryMatrix u = haar_random(dim, 500 + static_cast<std::uint64_t>(trial));
        const AlgebraElement v = principal_log(u);
        EXPECT_LT((matrix_exp(v).matrix() - u.matrix()).norm(), 1e-9);
        EXPECT_LT(anti_hermiticity_residual(v.matrix()), 1e-12);
        Eigen::SelfAdjointEigenSolver<Matrix> eig(Complex(0, -1) * v.matrix());
        for (Index k = 0; k < dim; ++k) {
            EXPECT_GT(eig.eigenvalues()(k), -kPi - 1e-9);
            EXPECT_LE(eig.eigenvalues()(k), kPi + 1e-9);
        }
        for (double a : eigenangles(u)) {
            EXPECT_GT(a, -kPi);
            EXPECT_LE(a, kPi);
        }
    }
}

TEST(PrincipalLog, EngineeredMinusOneEigenvalue) {
    for (int trial = 0; trial < 20; ++trial) {
        const UnitaryMatrix q = haar_random(4, 900 + static_cast<std::uint64_t>(trial));
        Eigen::VectorXcd d(4);
        d << -1.0, std::polar(1.0, 0.3), std::polar(1.0, -2.9), -1.0;
        const UnitaryMatrix u = UnitaryMatrix::trusted(q.matrix() * d.asDiagonal() * q.matrix().adjoint());
        const AlgebraElement v = principal_log(u);
        EXPECT_LT((matrix_exp(v).matrix() - u.matrix()).norm(), 1e-9);
        const std::vector<double> angles = eigenangles(u);
        EXPECT_EQ(std::count(angles.begin(), angles.end(), kPi), 2);
        EXPECT_NEAR(v.matrix().trace().imag(), 2 * kPi + 0.3 - 2.9, 1e-9);
    }
}

TEST(PrincipalLog, MinimalAmongShiftedLogarithms) {
    for (int trial = 0; trial < 10; ++trial) {
        const UnitaryMatrix u = haar_random(3, 1200 + static_cast<std::uint64_t>(trial));
        Eigen::ComplexSchur<Matrix> schur(u.matrix());
        const Matrix& z = schur.matrixU();
        const double principal = principal_log(u).norm();
        std::vector<double> base(3);
        for (Index k = 0; k < 3; ++k) base[static_cast<std::size_t>(k)] = std::arg(schur.matrixT()(k, k));
        // Each eigenangle takes a shift in {-2 pi, 0, +2 pi}; skip the all-zero choice.
        for (int code = 1; code < 27; ++code) {
            Eigen::VectorXcd diag(3);
            int c = code;
            for (Index k = 0; k < 3; ++k, c /= 3) {
                diag(k) = Complex(0.0, base[static_cast<std::size_t>(k)] + 2 * kPi * (c % 3 - 1));
            }
            const Matrix w = z * diag.asDiagonal() * z.adjoint();
            if (code == 13) continue;  // (0, 0, 0) shift
            EXPECT_LT((matrix_exp(AlgebraElement::trusted(w)).matrix() - u.matrix()).norm(), 1e-9);
            EXPECT_LE(principal, w.norm() + 1e-12);
        }
    }
}

TEST(PrincipalLog, RejectsNonUnitaryConstruction) {
    Matrix bad = Matrix::Identity(2, 2);
    bad(0, 1) = 0.1;
    try {
        principal_log(UnitaryMatrix::checked(bad));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_unitary);
    }
}

TEST(MatrixExp, Examples) {
    EXPECT_LT((matrix_exp(AlgebraElement::zero(3)).matrix() - Matrix::Identity(3, 3)).norm(), 1e-15);
    Matrix v = Matrix::Zero(2, 2);
    v(0, 0) = Complex(0, kPi / 2);
    v(1, 1) = Complex(0, -kPi / 2);
    const Matrix e = matrix_exp(AlgebraElement::checked(v)).matrix();
    EXPECT_LT(std::abs(e(0, 0) - Complex(0, 1)), 1e-15);
    EXPECT_LT(std::abs(e(1, 1) - Complex(0, -1)), 1e-15);
    EXPECT_LT(std::abs(e(0, 1)), 1e-15);

    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const AlgebraElement a = AlgebraElement::checked(random_anti_hermitian(6, rng, 5.0));
        EXPECT_LT(unitarity_residual(matrix_exp(a).matrix()), 1e-12);
    }
}

TEST(ImageBasis, SingleMode) {
    for (int n = 1; n <= 4; ++n) {
        const ImageBasis image = build_image_basis(FockBasis::enumerate(1, n));
        ASSERT_EQ(image.size(), 1u);
        EXPECT_LT(std::abs(image.elements()[0](0, 0) - Complex(0, 1)), 1e-15);
        // dphi(i c) = i n c, so the unit element pulls back to i / n.
        EXPECT_LT(std::abs(image.preimages()[0](0, 0) - Complex(0, 1.0 / n)), 1e-15);
    }
}

TEST(ImageBasis, GramMatrixIsIdentity) {
    for (auto [m, n] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{2, 3}, std::pair{3, 3}, std::pair{4, 2}}) {
        const FockBasis basis = FockBasis::enumerate(m, n);
        const ImageBasis image = build_image_basis(basis);
        ASSERT_EQ(image.size(), static_cast<std::size_t>(m * m));
        for (std::size_t i = 0; i < image.size(); ++i) {
            for (std::size_t j = 0; j < image.size(); ++j) {
                EXPECT_NEAR(inner(image.elements()[i], image.elements()[j]), i == j ? 1.0 : 0.0, 1e-12);
            }
            EXPECT_LT((dphi(image.preimages()[i], basis).matrix() - image.elements()[i].matrix()).norm(), 1e-12);
        }
        EXPECT_NO_THROW(image.validate());
    }
}

TEST(ImageBasis, ValidateCatchesBrokenPreimage) {
    const FockBasis basis = FockBasis::enumerate(2, 2);
    const ImageBasis good = build_image_basis(basis);
    std::vector<AlgebraElement> pre = good.preimages();
    pre[1] = 2.0 * pre[1];
    const ImageBasis bad(basis, good.elements(), pre);
    EXPECT_THROW(bad.validate(), Error);
}

TEST(Project, BasisElementProjectsToItself) {
    const ImageBasis image = build_image_basis(FockBasis::enumerate(3, 2));
    const Projection p = project(image.elements()[0], image);
    EXPECT_LT((p.tangent.matrix() - image.elements()[0].matrix()).norm(), 1e-12);
    EXPECT_LT(p.normal.norm(), 1e-12);
    EXPECT_NEAR(p.coefficients[0], 1.0, 1e-12);
    for (std::size_t i = 1; i < p.coefficients.size(); ++i) EXPECT_NEAR(p.coefficients[i], 0.0, 1e-12);
}

TEST(Project, QftTangentComponent) {
    const FockBasis ref = FockBasis::two_mode_two_photon_reference();
    const ImageBasis image = build_image_basis(ref);
    const AlgebraElement v = principal_log(UnitaryMatrix::checked(testing::qft3()), BranchCut::lower);
    const Projection p = project(v, image);
    EXPECT_LT(max_entry_error(p.tangent.matrix(), testing::printed_log_u_tangent()), 1e-4);

    // The u(2) preimage lifts back onto the printed tangent component.
    const AlgebraElement h = lift_coefficients(p.coefficients, image);
    EXPECT_LT(max_entry_error(dphi(h, ref).matrix(), testing::printed_log_u_tangent()), 1e-4);
}

TEST(Project, PythagorasAndIdempotence) {
    std::mt19937_64 rng(3);
    const ImageBasis image = build_image_basis(FockBasis::enumerate(3, 2));
    for (int trial = 0; trial < 50; ++trial) {
        const AlgebraElement v = AlgebraElement::checked(random_anti_hermitian(6, rng, 3.0));
        const Projection p = project(v, image);
        EXPECT_NEAR(inner(p.tangent, p.normal), 0.0, 1e-8);
        EXPECT_NEAR(v.norm() * v.norm(), p.tangent.norm() * p.tangent.norm() + p.normal.norm() * p.normal.norm(), 1e-9);
        const Projection again = project(p.tangent, image);
        EXPECT_LT((again.tangent.matrix() - p.tangent.matrix()).norm(), 1e-9);
        EXPECT_LT(again.normal.norm(), 1e-9);
    }
}

TEST(Project, ShapeMismatch) {
    const ImageBasis image = build_image_basis(FockBasis::enumerate(2, 2));
    EXPECT_THROW(project(AlgebraElement::zero(4), image), Error);
}

TEST(Distance, Examples) {
    const UnitaryMatrix q = UnitaryMatrix::checked(testing::qft3());
    EXPECT_NEAR(distance(q, UnitaryMatrix::identity(3)), 2.449489743, 1e-9);
    EXPECT_EQ(distance(q, q), 0.0);
    const UnitaryMatrix ua3 = phi(UnitaryMatrix::checked(testing::scattering_a3()),
                                  FockBasis::two_mode_two_photon_reference());
    EXPECT_NEAR(distance(q, ua3), 0.85675, 1e-4);
    EXPECT_THROW(distance(q, UnitaryMatrix::identity(2)), Error);
}

// Tangent exponentials are images of scattering matrices; the normal part
// bounds both the error and the state fidelity.
TEST(Projection, TangentExponentialBound) {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (auto [m, n] : {std::pair{2, 2}, std::pair{2, 3}}) {
        const FockBasis basis = FockBasis::enumerate(m, n);
        const ImageBasis image = build_image_basis(basis);
        const auto dim = static_cast<Index>(basis.size());
        int fidelity_checks = 0;
        for (int trial = 0; trial < 200; ++trial) {
            const UnitaryMatrix u = haar_random(static_cast<int>(dim), rng());
            const Projection p = project(principal_log(u), image);
            const UnitaryMatrix ua = matrix_exp(p.tangent);
            const UnitaryMatrix witness = matrix_exp(lift_coefficients(p.coefficients, image));
            EXPECT_LT((phi(witness, basis).matrix() - ua.matrix()).norm(), 1e-8);
            EXPECT_LE(distance(u, ua), p.normal.norm() + 1e-12);

            const double vn2 = p.normal.norm() * p.normal.norm();
            if (vn2 > 2.0) continue;
            for (int k = 0; k < 100; ++k) {
                Eigen::VectorXcd psi(dim);
                for (Index i = 0; i < dim; ++i) psi(i) = Complex(normal(rng), normal(rng));
                psi.normalize();
                const double overlap = std::abs((u.matrix() * psi).dot(ua.matrix() * psi));
                EXPECT_GE(overlap, 1.0 - vn2 / 2.0 - 1e-12);
                ++fidelity_checks;
            }
        }
        EXPECT_GT(fidelity_checks, 0);
    }
}

} // namespace
} // namespace optiq
