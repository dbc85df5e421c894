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

#ifndef OPTIQ_FOCK_HPP
#define OPTIQ_FOCK_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace optiq {

/// Occupation numbers, one entry per optical mode.
struct FockState {
    std::vector<int> occupations;

    int modes() const noexcept { return static_cast<int>(occupations.size()); }
    int photons() const noexcept;
    std::string to_string() const;

    auto operator<=>(const FockState&) const = default;
};

enum class BasisOrdering {
    lexicographic_descending,
    explicit_list,
};

/// Largest M accepted by default; dense M x M storage beyond this is impractical.
inline constexpr std::size_t kDefaultMaxDimension = 20000;

/// Number of n-photon states in m modes, C(m+n-1, n). Throws on overflow.
std::uint64_t dimension(int modes, int photons);

/**
 * Ordered enumeration of every n-photon, m-mode Fock state.
 *
 * The position of a state in the list is its row/column index in every
 * M x M matrix built against this basis. Immutable once constructed.
 */
class FockBasis {
public:
    /// All states, lexicographically descending on occupation vectors.
    static FockBasis enumerate(int modes, int photons,
                               std::size_t max_dimension = kDefaultMaxDimension);

    /// Caller-specified order; must be a permutation of the full state set.
    static FockBasis from_list(int modes, int photons, std::vector<FockState> states,
                               std::size_t max_dimension = kDefaultMaxDimension);

    /// (2,0), (0,2), (1,1): the order used for the two-mode, two-photon QFT example.
    static FockBasis two_mode_two_photon_reference();

    int modes() const noexcept { return modes_; }
    int photons() const noexcept { return photons_; }
    std::size_t size() const noexcept { return states_.size(); }
    BasisOrdering ordering() const noexcept { return ordering_; }

    const std::vector<FockState>& states() const noexcept { return states_; }
    const FockState& state(std::size_t k) const { return states_.at(k); }

    std::size_t index_of(const FockState& state) const;
    std::size_t index_of(const std::vector<int>& occupations) const;
    bool contains(const std::vector<int>& occupations) const;

    bool operator==(const FockBasis& other) const {
        return modes_ == other.modes_ && photons_ == other.photons_ && states_ == other.states_;
    }

private:
    FockBasis(int modes, int photons, std::vector<FockState> states, BasisOrdering ordering);

    int modes_ = 0;
    int photons_ = 0;
    BasisOrdering ordering_ = BasisOrdering::lexicographic_descending;
    std::vector<FockState> states_;
    std::map<std::vector<int>, std::size_t> index_;
};

} // namespace optiq

#endif
