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

#include "optiq/lie.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "optiq/error.hpp"
#include "optiq/homomorphism.hpp"

namespace optiq {

namespace {

void require_same_shape(const Matrix& u, const Matrix& v, const char* what) {
    if (u.rows() != v.rows() || u.cols() != v.cols()) {
        std::ostringstream os;
        os << what << ": shape mismatch " << u.rows() << "x" << u.cols() << " vs " << v.rows()
           << "x" << v.cols();
        throw Error(ErrorKind::shape, os.str());
    }
}

double fold_angle(double theta, BranchCut branch) {
    constexpr double pi = std::numbers::pi;
    if (branch == BranchCut::upper && theta <= -pi + kBranchFoldTolerance) return pi;
    if (branch == BranchCut::lower && theta >= pi - kBranchFoldTolerance) return -pi;
    return theta;
}

struct SpectralFactor {
    Matrix vectors;
    std::vector<double> angles;
};

// A unitary is normal, so its complex Schur form is diagonal up to roundoff
// and the Schur vectors are orthonormal eigenvectors even under degeneracy.
SpectralFactor unitary_spectrum(const UnitaryMatrix& u, BranchCut branch) {
    Eigen::ComplexSchur<Matrix> schur(u.matrix(), true);
    if (schur.info() != Eigen::Success) {
        throw Error(ErrorKind::internal_consistency, "Schur factorization did not converge");
    }
    SpectralFactor out;
    out.vectors = schur.matrixU();
    const Matrix& t = schur.matrixT();
    out.angles.resize(static_cast<std::size_t>(t.rows()));
    for (Index i = 0; i < t.rows(); ++i) {
        out.angles[static_cast<std::size_t>(i)] = fold_angle(std::arg(t(i, i)), branch);
    }
    return out;
}

} // namespace

double inner(const Matrix& u, const Matrix& v) {
    require_same_shape(u, v, "inner");
    return (u.conjugate().cwiseProduct(v)).sum().real();
}

double inner(const AlgebraElement& u, const AlgebraElement& v) {
    return inner(u.matrix(), v.matrix());
}

AlgebraElement principal_log(const UnitaryMatrix& u, BranchCut branch) {
    const SpectralFactor f = unitary_spectrum(u, branch);
    Eigen::VectorXcd diag(static_cast<Index>(f.angles.size()));
    for (std::size_t i = 0; i < f.angles.size(); ++i) {
        diag(static_cast<Index>(i)) = Complex(0.0, f.angles[i]);
    }
    return AlgebraElement::trusted(f.vectors * diag.asDiagonal() * f.vectors.adjoint());
}

std::vector<double> eigenangles(const UnitaryMatrix& u, BranchCut branch) {
    SpectralFactor f = unitary_spectrum(u, branch);
    std::sort(f.angles.begin(), f.angles.end());
    return f.angles;
}

UnitaryMatrix matrix_exp(const AlgebraElement& v) {
    const Matrix h = Complex(0.0, -1.0) * v.matrix();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (h + h.adjoint()));
    if (eig.info() != Eigen::Success) {
        throw Error(ErrorKind::internal_consistency, "Hermitian eigensolver did not converge");
    }
    const Eigen::VectorXcd phases =
        (Complex(0.0, 1.0) * eig.eigenvalues().cast<Complex>()).array().exp().matrix();
    return UnitaryMatrix::trusted(eig.eigenvectors() * phases.asDiagonal() *
                                  eig.eigenvectors().adjoint());
}

double distance(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    require_same_shape(a.matrix(), b.matrix(), "distance");
    return (a.matrix() - b.matrix()).norm();
}

ImageBasis::ImageBasis(FockBasis basis, std::vector<AlgebraElement> elements,
                       std::vector<AlgebraElement> preimages)
    : basis_(std::move(basis)), elements_(std::move(elements)), preimages_(std::move(preimages)) {
    const auto m = static_cast<std::size_t>(basis_.modes());
    if (elements_.size() != m * m || preimages_.size() != m * m) {
        std::ostringstream os;
        os << "image basis needs " << m * m << " elements and preimages, got "
           << elements_.size() << " and " << preimages_.size();
        throw Error(ErrorKind::shape, os.str());
    }
    const auto dim = static_cast<Index>(basis_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (elements_[i].dim() != dim || preimages_[i].dim() != static_cast<Index>(m)) {
            throw Error(ErrorKind::shape, "image basis element has the wrong dimension");
        }
    }
}

void ImageBasis::validate(double tolerance) const {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        for (std::size_t j = i; j < elements_.size(); ++j) {
            const double expected = (i == j) ? 1.0 : 0.0;
            if (std::abs(inner(elements_[i], elements_[j]) - expected) > tolerance) {
                std::ostringstream os;
                os << "image basis is not orthonormal at (" << i << ", " << j << ")";
                throw Error(ErrorKind::internal_consistency, os.str());
            }
        }
        if ((dphi_general(preimages_[i].matrix(), basis_) - elements_[i].matrix()).norm() >
            tolerance) {
            std::ostringstream os;
            os << "image basis preimage " << i << " does not map onto its element";
            throw Error(ErrorKind::internal_consistency, os.str());
        }
    }
}

std::vector<AlgebraElement> canonical_algebra_basis(int modes) {
    const Complex i(0.0, 1.0);
    std::vector<AlgebraElement> out;
    out.reserve(static_cast<std::size_t>(modes * modes));
    for (int j = 0; j < modes; ++j) {
        Matrix e = Matrix::Zero(modes, modes);
        e(j, j) = i;
        out.push_back(AlgebraElement::trusted(std::move(e)));
    }
    for (int j = 0; j < modes; ++j) {
        for (int k = j + 1; k < modes; ++k) {
            Matrix real = Matrix::Zero(modes, modes);
            real(j, k) = 1.0;
            real(k, j) = -1.0;
            out.push_back(AlgebraElement::trusted(std::move(real)));
            Matrix imag = Matrix::Zero(modes, modes);
            imag(j, k) = i;
            imag(k, j) = i;
            out.push_back(AlgebraElement::trusted(std::move(imag)));
        }
    }
    return out;
}

ImageBasis build_image_basis(const FockBasis& basis) {
    const std::vector<AlgebraElement> generators = canonical_algebra_basis(basis.modes());
    std::vector<Matrix> lifted;
    std::vector<Matrix> pre;
    lifted.reserve(generators.size());
    pre.reserve(generators.size());

    for (std::size_t idx = 0; idx < generators.size(); ++idx) {
        Matrix b = dphi_general(generators[idx].matrix(), basis);
        Matrix g = generators[idx].matrix();
        // Modified Gram-Schmidt, run twice.
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < lifted.size(); ++j) {
                const double c = inner(lifted[j], b);
                b -= c * lifted[j];
                g -= c * pre[j];
            }
        }
        const double norm = std::sqrt(inner(b, b));
        if (norm < kRankDropTolerance) {
            std::ostringstream os;
            os << "image algebra generator " << idx << " is linearly dependent (norm " << norm
               << "); dphi lost rank";
            throw Error(ErrorKind::rank_deficiency, os.str());
        }
        lifted.push_back(b / norm);
        pre.push_back(g / norm);
    }

    std::vector<AlgebraElement> elements;
    std::vector<AlgebraElement> preimages;
    for (std::size_t j = 0; j < lifted.size(); ++j) {
        elements.push_back(AlgebraElement::trusted(std::move(lifted[j])));
        preimages.push_back(AlgebraElement::trusted(std::move(pre[j])));
    }
    return ImageBasis(basis, std::move(elements), std::move(preimages));
}

Projection project(const AlgebraElement& v, const ImageBasis& image) {
    const auto dim = static_cast<Index>(image.fock_basis().size());
    if (v.dim() != dim) {
        std::ostringstream os;
        os << "project: element is " << v.dim() << "x" << v.dim() << " but the image basis is "
           << dim << "x" << dim;
        throw Error(ErrorKind::shape, os.str());
    }
    const double scale = std::max(1.0, v.norm());
    Projection out;
    out.coefficients.reserve(image.size());
    Matrix tangent = Matrix::Zero(dim, dim);
    for (const AlgebraElement& b : image.elements()) {
        const Complex c = (b.matrix().conjugate().cwiseProduct(v.matrix())).sum();
        if (std::abs(c.imag()) > 1e-9 * scale) {
            std::ostringstream os;
            os << "projection coefficient has imaginary part " << c.imag();
            throw Error(ErrorKind::internal_consistency, os.str());
        }
        out.coefficients.push_back(c.real());
        tangent += c.real() * b.matrix();
    }
    out.tangent = AlgebraElement::trusted(tangent);
    out.normal = AlgebraElement::trusted(v.matrix() - tangent);
    return out;
}

AlgebraElement lift_coefficients(const std::vector<double>& coefficients, const ImageBasis& image) {
    if (coefficients.size() != image.size()) {
        throw Error(ErrorKind::shape, "coefficient count does not match the image basis");
    }
    const Index m = image.fock_basis().modes();
    Matrix h = Matrix::Zero(m, m);
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        h += coefficients[i] * image.preimages()[i].matrix();
    }
    return AlgebraElement::trusted(std::move(h));
}

} // namespace optiq
