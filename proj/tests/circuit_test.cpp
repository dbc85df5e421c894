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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "optiq/approx.hpp"
#include "optiq/circuit.hpp"
#include "optiq/error.hpp"
#include "test_util.hpp"

namespace optiq {
namespace {

constexpr double kPi = std::numbers::pi;

int beam_splitters(const CircuitPlan& plan) {
    int count = 0;
    for (const OpticalElement& e : plan.elements) count += e.kind == ElementKind::beam_splitter;
    return count;
}

TEST(Decompose, IdentityHasNoElements) {
    for (int m = 1; m <= 5; ++m) {
        const CircuitPlan plan = decompose(UnitaryMatrix::identity(m));
        EXPECT_EQ(plan.modes, m);
        EXPECT_TRUE(plan.elements.empty());
        ASSERT_EQ(plan.residual_phases.size(), static_cast<std::size_t>(m));
        for (double p : plan.residual_phases) EXPECT_NEAR(p, 0.0, 1e-12);
    }
}

TEST(Decompose, ReferenceScatteringRoundTrip) {
    const UnitaryMatrix s = UnitaryMatrix::checked(testing::scattering_a3());
    const CircuitPlan plan = decompose(s);
    EXPECT_EQ(beam_splitters(plan), 1);
    EXPECT_LT((reconstruct(plan).matrix() - s.matrix()).norm(), 1e-9);
}

TEST(Decompose, RandomRoundTrips) {
    for (int m = 2; m <= 6; ++m) {
        for (std::uint64_t i = 0; i < 100; ++i) {
            const UnitaryMatrix s = haar_random(m, derive_seed(m, i));
            const CircuitPlan plan = decompose(s);
            EXPECT_LE(beam_splitters(plan), m * (m - 1) / 2);
            EXPECT_LT((reconstruct(plan).matrix() - s.matrix()).norm(), 1e-9);
            for (const OpticalElement& e : plan.elements) {
                ASSERT_EQ(e.modes.size(), 2u);
                EXPECT_EQ(e.modes[1], e.modes[0] + 1);
                EXPECT_GE(e.modes[0], 0);
                EXPECT_LT(e.modes[1], m);
                EXPECT_GT(e.phi, -kPi - 1e-12);
                EXPECT_LE(e.phi, kPi + 1e-12);
            }
        }
    }
}

TEST(Decompose, GlobalPhaseOnlyMovesResiduals) {
    const UnitaryMatrix s = haar_random(4, 11);
    const double alpha = 0.7;
    const UnitaryMatrix t = UnitaryMatrix::checked(std::polar(1.0, alpha) * s.matrix());
    const CircuitPlan a = decompose(s);
    const CircuitPlan b = decompose(t);
    ASSERT_EQ(a.elements.size(), b.elements.size());
    for (std::size_t i = 0; i < a.elements.size(); ++i) {
        EXPECT_NEAR(a.elements[i].theta, b.elements[i].theta, 1e-9);
        EXPECT_NEAR(std::remainder(a.elements[i].phi - b.elements[i].phi, 2 * kPi), 0.0, 1e-9);
    }
    for (std::size_t j = 0; j < a.residual_phases.size(); ++j) {
        EXPECT_NEAR(std::remainder(b.residual_phases[j] - a.residual_phases[j] - alpha, 2 * kPi), 0.0, 1e-9);
    }
}

TEST(Decompose, BalancedSplitter) {
    Matrix h(2, 2);
    h << Complex(1, 0), Complex(0, 1), Complex(0, 1), Complex(1, 0);
    h /= std::sqrt(2.0);
    const CircuitPlan plan = decompose(UnitaryMatrix::checked(h));
    ASSERT_EQ(plan.elements.size(), 1u);
    EXPECT_NEAR(plan.elements[0].theta, kPi / 4, 1e-12);
    EXPECT_LT((reconstruct(plan).matrix() - h).norm(), 1e-12);
}

TEST(Reconstruct, HandBuiltPlan) {
    CircuitPlan plan;
    plan.modes = 2;
    plan.elements.push_back({ElementKind::beam_splitter, {0, 1}, kPi / 4, 0.0});
    plan.elements.push_back({ElementKind::phase_shifter, {1}, 0.0, kPi / 2});
    plan.residual_phases = {0.0, 0.0};
    const double c = std::cos(kPi / 4);
    Matrix expected(2, 2);
    expected << Complex(c, 0), Complex(-c, 0), Complex(0, c), Complex(0, c);
    EXPECT_LT((reconstruct(plan).matrix() - expected).norm(), 1e-12);
}

TEST(Reconstruct, RejectsMalformedPlans) {
    auto expect_malformed = [](const CircuitPlan& plan) {
        try {
            reconstruct(plan);
            ADD_FAILURE() << "accepted";
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::malformed_plan);
        }
    };
    CircuitPlan base;
    base.modes = 3;
    base.residual_phases = {0, 0, 0};
    CircuitPlan p = base;
    p.residual_phases = {0, 0};
    expect_malformed(p);
    p = base;
    p.elements.push_back({ElementKind::beam_splitter, {0, 2}, 0.1, 0.0});
    expect_malformed(p);
    p = base;
    p.elements.push_back({ElementKind::beam_splitter, {2, 3}, 0.1, 0.0});
    expect_malformed(p);
    p = base;
    p.elements.push_back({ElementKind::phase_shifter, {0, 1}, 0.0, 0.0});
    expect_malformed(p);
    p = base;
    p.elements.push_back({ElementKind::beam_splitter, {0, 1}, std::nan(""), 0.0});
    expect_malformed(p);
    p = base;
    p.modes = 0;
    p.residual_phases.clear();
    expect_malformed(p);
}

TEST(Circuit, TableListsEveryElement) {
    const CircuitPlan plan = decompose(haar_random(3, 5));
    const std::string table = format_plan_table(plan);
    std::size_t lines = 0;
    for (char ch : table) lines += ch == '\n';
    EXPECT_GE(lines, plan.elements.size() + 1);
}

TEST(Circuit, WrapAngle) {
    EXPECT_DOUBLE_EQ(wrap_angle(0.5), 0.5);
    EXPECT_NEAR(wrap_angle(-kPi), kPi, 1e-15);
    EXPECT_NEAR(wrap_angle(3 * kPi), kPi, 1e-12);
    EXPECT_NEAR(wrap_angle(2 * kPi + 0.25), 0.25, 1e-12);
}

} // namespace
} // namespace optiq
