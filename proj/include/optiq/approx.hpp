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

#ifndef OPTIQ_APPROX_HPP
#define OPTIQ_APPROX_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "optiq/lie.hpp"
#include "optiq/matrix.hpp"

namespace optiq {

struct IterationRecord {
    int step = 0;
    /// Frobenius distance ||U - U_i||.
    double distance = 0.0;
    /// Manifold distance ||log(U_i^dagger U)|| = ||v^i||.
    double geodesic_distance = 0.0;
    double tangent_norm = 0.0;
    double normal_norm = 0.0;
};

/// What an observer sees at every step, before the stopping test.
struct StepView {
    int step;
    const UnitaryMatrix& evolution;
    const UnitaryMatrix& scattering;
    const Projection& projection;
    const IterationRecord& record;
};

struct ApproxOptions {
    double tol = 1e-10;
    int max_iter = 200;
    BranchCut branch = BranchCut::upper;
    /// Polar re-projection of U_i and S_i after this many updates; 0 disables.
    int reunitarize_every = 25;
    /// Allowed growth of the geodesic distance before the run is declared unstable.
    double instability_slack = 1e-6;
    std::function<void(const StepView&)> observer;
};

struct ApproxResult {
    UnitaryMatrix u_tilde;
    UnitaryMatrix s_tilde;
    double final_distance = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<IterationRecord> trace;
};

/**
 * Locally optimal linear-optics approximation of a target evolution.
 *
 * Starting from U_0 = phi(start), repeats
 *     v = log(U_i^dagger U),  U_{i+1} = U_i exp(v_T),  S_{i+1} = S_i exp(h)
 * with h the u(m) preimage of v_T, until ||v_T|| < tol or max_iter updates.
 * The trace holds one record per visited iterate, the last one for the
 * returned matrix.
 */
ApproxResult approximate(const UnitaryMatrix& target, const UnitaryMatrix& start,
                         const ImageBasis& image, const ApproxOptions& options = {});

/// Lower bound on |<U psi, U_a psi>| for unit psi: max(-1, 1 - ||v_N||^2 / 2).
double fidelity_bound(double normal_norm);

/// Seed for the index-th sub-run of a seeded experiment (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Haar-random m x m unitary: QR of a complex Ginibre matrix with the
/// column phases fixed by diag(R). Deterministic for a given seed.
UnitaryMatrix haar_random(int modes, std::uint64_t seed);

struct ChiSquareResult {
    double statistic = 0.0;
    int degrees_of_freedom = 0;
    double critical_value = 0.0;
    double p_value = 0.0;
    bool passed = false;
};

/// Eigenphase spacing of a 2 x 2 unitary folded to [0, pi].
double eigenphase_spacing(const UnitaryMatrix& u);

/// CDF of the eigenphase spacing of Haar-random U(2): (s - sin s) / pi.
double haar_spacing_cdf(double spacing);

/// Pearson chi-square of spacings against the Haar law with equiprobable bins.
ChiSquareResult haar_spacing_test(const std::vector<double>& spacings, int bins = 20,
                                  double significance = 0.01);

struct MultiStartOptions {
    int starts = 1;
    std::uint64_t seed = 0;
    double cluster_tol = 1e-4;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
    ApproxOptions approx;
};

struct Cluster {
    ApproxResult representative;
    int hit_count = 0;
};

/**
 * Runs approximate() from the identity and from starts - 1 Haar-random
 * scattering matrices, then groups results whose U_tilde lie within
 * cluster_tol of a cluster's first member. Clusters come back sorted by
 * final distance; each representative is the closest member.
 *
 * Run i > 0 starts from haar_random(m, derive_seed(seed, i)), so the output
 * does not depend on the thread count.
 */
std::vector<Cluster> multi_start(const UnitaryMatrix& target, const ImageBasis& image,
                                 const MultiStartOptions& options);

} // namespace optiq

#endif
