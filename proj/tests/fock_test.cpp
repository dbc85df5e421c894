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
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "optiq/error.hpp"
#include "optiq/fock.hpp"

namespace optiq {
namespace {

// Oracle: every tuple in [0, n]^m, kept when it sums to n.
std::vector<std::vector<int>> brute_force_states(int m, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> t(static_cast<std::size_t>(m), 0);
    std::function<void(int)> rec = [&](int j) {
        if (j == m) {
            int sum = 0;
            for (int k : t) sum += k;
            if (sum == n) out.push_back(t);
            return;
        }
        for (int k = 0; k <= n; ++k) {
            t[static_cast<std::size_t>(j)] = k;
            rec(j + 1);
        }
    };
    rec(0);
    return out;
}

TEST(Dimension, Examples) {
    EXPECT_EQ(dimension(2, 2), 3u);
    EXPECT_EQ(dimension(1, 7), 1u);
    EXPECT_EQ(dimension(3, 3), brute_force_states(3, 3).size());
    EXPECT_EQ(dimension(3, 3), 10u);
    EXPECT_EQ(dimension(4, 0), 1u);
}

TEST(Dimension, RejectsInvalidArguments) {
    EXPECT_THROW(dimension(0, 2), Error);
    EXPECT_THROW(dimension(2, -1), Error);
}

TEST(Dimension, OverflowIsReportedNotWrapped) {
    try {
        dimension(1000, 1000);
        FAIL() << "expected overflow";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::dimension_overflow);
    }
    // C(66, 32) still fits in 64 bits.
    EXPECT_EQ(dimension(35, 32), 7007092303604022630ULL);
}

TEST(FockBasis, CountMatchesBruteForce) {
    for (int m = 1; m <= 5; ++m) {
        for (int n = 1; n <= 5; ++n) {
            const FockBasis basis = FockBasis::enumerate(m, n);
            EXPECT_EQ(basis.size(), brute_force_states(m, n).size()) << "m=" << m << " n=" << n;
            EXPECT_EQ(basis.size(), dimension(m, n));
        }
    }
}

TEST(FockBasis, DefaultOrderIsLexicographicDescending) {
    const FockBasis b21 = FockBasis::enumerate(2, 1);
    ASSERT_EQ(b21.size(), 2u);
    EXPECT_EQ(b21.state(0).occupations, (std::vector<int>{1, 0}));
    EXPECT_EQ(b21.state(1).occupations, (std::vector<int>{0, 1}));

    auto expected = brute_force_states(3, 2);
    std::sort(expected.begin(), expected.end(), std::greater<>());
    const FockBasis b32 = FockBasis::enumerate(3, 2);
    std::vector<std::vector<int>> got;
    for (const FockState& s : b32.states()) got.push_back(s.occupations);
    EXPECT_EQ(got, expected);
    EXPECT_EQ(got, (std::vector<std::vector<int>>{
                       {2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}}));
    EXPECT_EQ(b32.ordering(), BasisOrdering::lexicographic_descending);
}

TEST(FockBasis, IndexOf) {
    const FockBasis ref = FockBasis::two_mode_two_photon_reference();
    EXPECT_EQ(ref.index_of(FockState{{0, 2}}), 1u);
    EXPECT_EQ(ref.index_of(ref.state(0)), 0u);
    EXPECT_EQ(ref.ordering(), BasisOrdering::explicit_list);

    const FockBasis b32 = FockBasis::enumerate(3, 2);
    EXPECT_EQ(b32.index_of(FockState{{0, 1, 1}}), 4u);

    for (int m = 1; m <= 4; ++m) {
        const FockBasis b = FockBasis::enumerate(m, 3);
        for (std::size_t k = 0; k < b.size(); ++k) EXPECT_EQ(b.index_of(b.state(k)), k);
    }
}

TEST(FockBasis, UnknownStateIsAnError) {
    const FockBasis b = FockBasis::enumerate(3, 2);
    try {
        b.index_of(FockState{{1, 1, 1}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::unknown_state);
    }
    EXPECT_FALSE(b.contains({2, 0}));
}

TEST(FockBasis, ExplicitListMustBePermutation) {
    auto expect_invalid = [](std::vector<FockState> states) {
        try {
            FockBasis::from_list(2, 2, std::move(states));
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::invalid_ordering);
        }
    };
    expect_invalid({FockState{{2, 0}}, FockState{{0, 2}}});
    expect_invalid({FockState{{2, 0}}, FockState{{2, 0}}, FockState{{1, 1}}});
    expect_invalid({FockState{{2, 0}}, FockState{{0, 2}}, FockState{{1, 2}}});
    expect_invalid({FockState{{2, 0, 0}}, FockState{{0, 2}}, FockState{{1, 1}}});

    const FockBasis ok = FockBasis::from_list(2, 2, {FockState{{2, 0}}, FockState{{0, 2}}, FockState{{1, 1}}});
    EXPECT_EQ(ok.state(2).occupations, (std::vector<int>{1, 1}));
}

TEST(FockBasis, EnumerationIsDeterministic) {
    EXPECT_EQ(FockBasis::enumerate(4, 3).states(), FockBasis::enumerate(4, 3).states());
}

TEST(FockBasis, DimensionCap) {
    try {
        FockBasis::enumerate(10, 10);  // C(19, 10) = 92378
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::dimension_limit);
    }
    EXPECT_EQ(FockBasis::enumerate(10, 10, 100000).size(), 92378u);
}

TEST(FockBasis, NeedsPhotons) {
    EXPECT_THROW(FockBasis::enumerate(3, 0), Error);
}

} // namespace
} // namespace optiq
