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

#ifndef OPTIQ_CIRCUIT_HPP
#define OPTIQ_CIRCUIT_HPP

#include <string>
#include <vector>

#include "optiq/matrix.hpp"

namespace optiq {

enum class ElementKind {
    beam_splitter,
    phase_shifter,
};

/**
 * One optical element acting on 0-based modes.
 *
 * A beam splitter on (j, j+1) applies
 *     [[e^{i phi} cos theta, -sin theta],
 *      [e^{i phi} sin theta,  cos theta]]
 * to that mode pair. A phase shifter on (j) multiplies mode j by e^{i phi};
 * its theta is unused and kept at 0.
 */
struct OpticalElement {
    ElementKind kind = ElementKind::beam_splitter;
    std::vector<int> modes;
    double theta = 0.0;
    double phi = 0.0;
};

/// Elements in the order light traverses them, then one phase per output mode.
struct CircuitPlan {
    int modes = 0;
    std::vector<OpticalElement> elements;
    std::vector<double> residual_phases;
};

/// Rectangular-mesh decomposition by nulling with adjacent-mode rotations.
CircuitPlan decompose(const UnitaryMatrix& scattering);

/// diag(e^{i residual}) * E_last * ... * E_first. Throws malformed_plan.
UnitaryMatrix reconstruct(const CircuitPlan& plan);

std::string format_plan_table(const CircuitPlan& plan);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double angle);

} // namespace optiq

#endif
