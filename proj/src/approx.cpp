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

#include "optiq/approx.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "optiq/error.hpp"
#include "optiq/homomorphism.hpp"

namespace optiq {

namespace {

void require_unitary(const UnitaryMatrix& u, const char* what) {
    const double residual = unitarity_residual(u.matrix());
    const double limit = kStructureTolerance * static_cast<double>(u.dim());
    if (!(residual <= limit)) {
        std::ostringstream os;
        os << what << " is not unitary: ||A^dagger A - Id||_F = " << residual;
        throw Error(ErrorKind::not_unitary, os.str());
    }
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

ApproxResult approximate(const UnitaryMatrix& target, const UnitaryMatrix& start,
                         const ImageBasis& image, const ApproxOptions& options) {
    const FockBasis& basis = image.fock_basis();
    if (target.dim() != static_cast<Index>(basis.size())) {
        std::ostringstream os;
        os << "target is " << target.dim() << "x" << target.dim() << " but the basis has "
           << basis.size() << " states";
        throw Error(ErrorKind::shape, os.str());
    }
    if (start.dim() != basis.modes()) {
        std::ostringstream os;
        os << "start is " << start.dim() << "x" << start.dim() << " but the basis has "
           << basis.modes() << " modes";
        throw Error(ErrorKind::shape, os.str());
    }
    if (!(options.tol > 0.0) || options.max_iter < 1) {
        throw Error(ErrorKind::invalid_argument, "approximate needs tol > 0 and max_iter >= 1");
    }
    require_unitary(target, "target");
    require_unitary(start, "start");

    UnitaryMatrix scattering = start;
    UnitaryMatrix evolution = phi(scattering, basis);
    ApproxResult result;

    for (int step = 0;; ++step) {
        const AlgebraElement v = principal_log(evolution.adjoint() * target, options.branch);
        const Projection split = project(v, image);

        IterationRecord record;
        record.step = step;
        record.distance = distance(target, evolution);
        record.geodesic_distance = v.norm();
        record.tangent_norm = split.tangent.norm();
        record.normal_norm = split.normal.norm();

        if (!result.trace.empty()) {
            const IterationRecord& prev = result.trace.back();
            if (record.geodesic_distance > prev.geodesic_distance + options.instability_slack) {
                std::ostringstream os;
                os << "geodesic distance increased at step " << step << ": "
                   << prev.geodesic_distance << " -> " << record.geodesic_distance;
                throw NumericalInstabilityError(step, os.str());
            }
        }
        result.trace.push_back(record);
        if (options.observer) {
            options.observer(StepView{step, evolution, scattering, split, result.trace.back()});
        }

        if (record.tangent_norm < options.tol) {
            result.converged = true;
            break;
        }
        if (step == options.max_iter) break;

        const AlgebraElement h = lift_coefficients(split.coefficients, image);
        evolution = evolution * matrix_exp(split.tangent);
        scattering = scattering * matrix_exp(h);
        ++result.iterations;
        if (options.reunitarize_every > 0 && result.iterations % options.reunitarize_every == 0) {
            evolution = nearest_unitary(evolution.matrix());
            scattering = nearest_unitary(scattering.matrix());
        }
    }

    const double witness = (phi(scattering, basis).matrix() - evolution.matrix()).norm();
    if (witness >= 1e-8 * (result.iterations + 1)) {
        std::ostringstream os;
        os << "scattering preimage drifted from the evolution matrix: ||phi(S) - U|| = "
           << witness;
        throw Error(ErrorKind::internal_consistency, os.str());
    }

    result.final_distance = result.trace.back().distance;
    result.u_tilde = std::move(evolution);
    result.s_tilde = std::move(scattering);
    return result;
}

double fidelity_bound(double normal_norm) {
    if (normal_norm < 0.0) {
        throw Error(ErrorKind::invalid_argument, "fidelity_bound needs a non-negative norm");
    }
    return std::max(-1.0, 1.0 - 0.5 * normal_norm * normal_norm);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ index);
}

UnitaryMatrix haar_random(int modes, std::uint64_t seed) {
    if (modes < 1) throw Error(ErrorKind::invalid_argument, "haar_random needs m >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
    Matrix z(modes, modes);
    for (Index col = 0; col < modes; ++col) {
        for (Index row = 0; row < modes; ++row) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(row, col) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ() * Matrix::Identity(modes, modes);
    const Matrix& r = qr.matrixQR();
    for (Index j = 0; j < modes; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) q.col(j) *= r(j, j) / mag;
    }
    return UnitaryMatrix::trusted(std::move(q));
}

double eigenphase_spacing(const UnitaryMatrix& u) {
    if (u.dim() != 2) throw Error(ErrorKind::shape, "eigenphase spacing needs a 2x2 unitary");
    const std::vector<double> angles = eigenangles(u);
    const double delta = std::abs(angles[1] - angles[0]);
    return std::min(delta, 2.0 * std::numbers::pi - delta);
}

double haar_spacing_cdf(double spacing) {
    const double s = std::clamp(spacing, 0.0, std::numbers::pi);
    return (s - std::sin(s)) / std::numbers::pi;
}

ChiSquareResult haar_spacing_test(const std::vector<double>& spacings, int bins,
                                  double significance) {
    if (spacings.empty() || bins < 2 || !(significance > 0.0 && significance < 1.0)) {
        throw Error(ErrorKind::invalid_argument, "spacing test needs samples, bins >= 2, 0 < alpha < 1");
    }
    // Inner bin edges at the CDF quantiles k / bins.
    std::vector<double> edges;
    for (int k = 1; k < bins; ++k) {
        const double target = static_cast<double>(k) / bins;
        double lo = 0.0;
        double hi = std::numbers::pi;
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (lo + hi);
            (haar_spacing_cdf(mid) < target ? lo : hi) = mid;
        }
        edges.push_back(0.5 * (lo + hi));
    }
    std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
    for (double s : spacings) {
        const auto slot = std::upper_bound(edges.begin(), edges.end(), s) - edges.begin();
        counts[static_cast<std::size_t>(slot)] += 1.0;
    }
    const double expected = static_cast<double>(spacings.size()) / bins;
    ChiSquareResult out;
    for (double c : counts) out.statistic += (c - expected) * (c - expected) / expected;
    out.degrees_of_freedom = bins - 1;
    boost::math::chi_squared dist(out.degrees_of_freedom);
    out.critical_value = boost::math::quantile(boost::math::complement(dist, significance));
    out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
    out.passed = out.statistic <= out.critical_value;
    return out;
}

std::vector<Cluster> multi_start(const UnitaryMatrix& target, const ImageBasis& image,
                                 const MultiStartOptions& options) {
    if (options.starts < 1) throw Error(ErrorKind::invalid_argument, "multi_start needs k >= 1");
    if (!(options.cluster_tol > 0.0)) {
        throw Error(ErrorKind::invalid_argument, "cluster tolerance must be positive");
    }
    const int m = image.fock_basis().modes();
    const auto runs = static_cast<std::size_t>(options.starts);
    std::vector<std::optional<ApproxResult>> results(runs);
    std::vector<std::exception_ptr> failures(runs);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < runs; i = next++) {
            try {
                const UnitaryMatrix start = (i == 0) ? UnitaryMatrix::identity(m)
                                                     : haar_random(m, derive_seed(options.seed, i));
                results[i] = approximate(target, start, image, options.approx);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
    threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(runs));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }

    // Leader clustering in run order: deterministic for a fixed run list.
    struct Group {
        std::size_t leader;
        std::size_t best;
        int hits;
    };
    std::vector<Group> groups;
    for (std::size_t i = 0; i < runs; ++i) {
        const ApproxResult& r = *results[i];
        auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
            return distance(results[g.leader]->u_tilde, r.u_tilde) < options.cluster_tol;
        });
        if (it == groups.end()) {
            groups.push_back(Group{i, i, 1});
            continue;
        }
        ++it->hits;
        if (r.final_distance < results[it->best]->final_distance) it->best = i;
    }
    std::stable_sort(groups.begin(), groups.end(), [&](const Group& a, const Group& b) {
        return results[a.best]->final_distance < results[b.best]->final_distance;
    });

    std::vector<Cluster> clusters;
    clusters.reserve(groups.size());
    for (const Group& g : groups) {
        clusters.push_back(Cluster{std::move(*results[g.best]), g.hits});
    }
    return clusters;
}

} // namespace optiq
