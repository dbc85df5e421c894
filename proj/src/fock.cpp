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

#include "optiq/fock.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "optiq/error.hpp"

namespace optiq {

int FockState::photons() const noexcept {
    return std::accumulate(occupations.begin(), occupations.end(), 0);
}

std::string FockState::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t j = 0; j < occupations.size(); ++j) {
        if (j) os << ',';
        os << occupations[j];
    }
    os << ')';
    return os.str();
}

std::uint64_t dimension(int modes, int photons) {
    if (modes < 1 || photons < 0) {
        std::ostringstream os;
        os << "dimension needs m >= 1 and n >= 0, got m=" << modes << " n=" << photons;
        throw Error(ErrorKind::invalid_argument, os.str());
    }
    // r_i = C(m-1+i, i) = r_{i-1} (m-1+i) / i. Dividing out gcd(r_{i-1}, i) first
    // leaves a divisor that must divide (m-1+i) exactly.
    std::uint64_t r = 1;
    for (int i = 1; i <= photons; ++i) {
        const auto factor = static_cast<std::uint64_t>(modes - 1 + i);
        const std::uint64_t g = std::gcd(r, static_cast<std::uint64_t>(i));
        const std::uint64_t divisor = static_cast<std::uint64_t>(i) / g;
        if (__builtin_mul_overflow(r / g, factor / divisor, &r)) {
            std::ostringstream os;
            os << "dimension C(" << modes + photons - 1 << ", " << photons
               << ") overflows 64-bit integers";
            throw Error(ErrorKind::dimension_overflow, os.str());
        }
    }
    return r;
}

namespace {

void check_limit(int modes, int photons, std::size_t max_dimension) {
    if (photons < 1) {
        throw Error(ErrorKind::invalid_argument, "a Fock basis needs at least one photon");
    }
    const std::uint64_t dim = dimension(modes, photons);
    if (dim > max_dimension) {
        std::ostringstream os;
        os << "Fock basis dimension " << dim << " exceeds the limit " << max_dimension;
        throw Error(ErrorKind::dimension_limit, os.str());
    }
}

void enumerate_into(std::vector<int>& prefix, int mode, int remaining, std::vector<FockState>& out) {
    const int modes = static_cast<int>(prefix.size());
    if (mode == modes - 1) {
        prefix[mode] = remaining;
        out.push_back(FockState{prefix});
        return;
    }
    for (int k = remaining; k >= 0; --k) {
        prefix[mode] = k;
        enumerate_into(prefix, mode + 1, remaining - k, out);
    }
}

} // namespace

FockBasis::FockBasis(int modes, int photons, std::vector<FockState> states, BasisOrdering ordering)
    : modes_(modes), photons_(photons), ordering_(ordering), states_(std::move(states)) {
    for (std::size_t k = 0; k < states_.size(); ++k) {
        index_.emplace(states_[k].occupations, k);
    }
}

FockBasis FockBasis::enumerate(int modes, int photons, std::size_t max_dimension) {
    check_limit(modes, photons, max_dimension);
    std::vector<FockState> states;
    states.reserve(dimension(modes, photons));
    std::vector<int> prefix(modes, 0);
    enumerate_into(prefix, 0, photons, states);
    return FockBasis(modes, photons, std::move(states), BasisOrdering::lexicographic_descending);
}

FockBasis FockBasis::from_list(int modes, int photons, std::vector<FockState> states,
                               std::size_t max_dimension) {
    check_limit(modes, photons, max_dimension);
    const std::uint64_t dim = dimension(modes, photons);
    if (states.size() != dim) {
        std::ostringstream os;
        os << "explicit ordering lists " << states.size() << " states, expected " << dim;
        throw Error(ErrorKind::invalid_ordering, os.str());
    }
    std::vector<std::vector<int>> seen;
    seen.reserve(states.size());
    for (const FockState& s : states) {
        const bool valid = s.modes() == modes && s.photons() == photons &&
                           std::all_of(s.occupations.begin(), s.occupations.end(),
                                       [](int k) { return k >= 0; });
        if (!valid) {
            throw Error(ErrorKind::invalid_ordering,
                        "explicit ordering contains " + s.to_string() + ", which is not an " +
                            std::to_string(photons) + "-photon state over " +
                            std::to_string(modes) + " modes");
        }
        seen.push_back(s.occupations);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw Error(ErrorKind::invalid_ordering, "explicit ordering repeats a state");
    }
    return FockBasis(modes, photons, std::move(states), BasisOrdering::explicit_list);
}

FockBasis FockBasis::two_mode_two_photon_reference() {
    return from_list(2, 2, {FockState{{2, 0}}, FockState{{0, 2}}, FockState{{1, 1}}});
}

std::size_t FockBasis::index_of(const std::vector<int>& occupations) const {
    auto it = index_.find(occupations);
    if (it == index_.end()) {
        throw Error(ErrorKind::unknown_state,
                    "state " + FockState{occupations}.to_string() + " is not in the basis");
    }
    return it->second;
}

std::size_t FockBasis::index_of(const FockState& state) const {
    return index_of(state.occupations);
}

bool FockBasis::contains(const std::vector<int>& occupations) const {
    return index_.count(occupations) != 0;
}

} // namespace optiq
