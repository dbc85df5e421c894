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

#include "optiq/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "optiq/error.hpp"

namespace optiq {

namespace {

constexpr double kPi = std::numbers::pi;

struct Rotation {
    int mode;  // acts on (mode, mode + 1)
    double theta;
    double phi;
};

// [[e^{i phi} cos t, -sin t], [e^{i phi} sin t, cos t]]
Eigen::Matrix2cd block(double theta, double phi) {
    const Complex e = std::polar(1.0, phi);
    Eigen::Matrix2cd t;
    t << e * std::cos(theta), -std::sin(theta), e * std::sin(theta), std::cos(theta);
    return t;
}

void apply_left(Matrix& u, const Rotation& r, bool inverse) {
    Eigen::Matrix2cd t = block(r.theta, r.phi);
    if (inverse) t = t.adjoint().eval();
    u.middleRows(r.mode, 2) = (t * u.middleRows(r.mode, 2)).eval();
}

void apply_right_inverse(Matrix& u, const Rotation& r) {
    const Eigen::Matrix2cd t_inv = block(r.theta, r.phi).adjoint();
    u.middleCols(r.mode, 2) = (u.middleCols(r.mode, 2) * t_inv).eval();
}

void check_element(const OpticalElement& e, int modes, std::size_t position) {
    std::ostringstream os;
    os << "element " << position << ": ";
    for (int k : e.modes) {
        if (k < 0 || k >= modes) {
            os << "mode " << k << " is out of range for " << modes << " modes";
            throw Error(ErrorKind::malformed_plan, os.str());
        }
    }
    if (e.kind == ElementKind::beam_splitter) {
        if (e.modes.size() != 2 || e.modes[1] != e.modes[0] + 1) {
            os << "a beam splitter needs an adjacent mode pair (j, j+1)";
            throw Error(ErrorKind::malformed_plan, os.str());
        }
    } else if (e.modes.size() != 1) {
        os << "a phase shifter acts on exactly one mode";
        throw Error(ErrorKind::malformed_plan, os.str());
    }
    if (!std::isfinite(e.theta) || !std::isfinite(e.phi)) {
        os << "non-finite angle";
        throw Error(ErrorKind::malformed_plan, os.str());
    }
}

} // namespace

double wrap_angle(double angle) {
    double a = std::remainder(angle, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    return a;
}

CircuitPlan decompose(const UnitaryMatrix& scattering) {
    const double residual = unitarity_residual(scattering.matrix());
    const Index n = scattering.dim();
    if (!(residual <= kStructureTolerance * static_cast<double>(n))) {
        std::ostringstream os;
        os << "decompose needs a unitary matrix, ||S^dagger S - Id||_F = " << residual;
        throw Error(ErrorKind::not_unitary, os.str());
    }
    const int m = static_cast<int>(n);
    Matrix u = scattering.matrix();
    std::vector<Rotation> right;  // in application order
    std::vector<Rotation> left;   // in the order they were multiplied on

    // Alternate between zeroing along anti-diagonals from the right (odd
    // sweeps, column rotations) and from the left (even sweeps, row rotations).
    for (int i = 1; i < m; ++i) {
        if (i % 2 == 1) {
            for (int j = 0; j < i; ++j) {
                const int row = m - 1 - j;
                const int col = i - j - 1;
                const Complex a = u(row, col);
                const Complex b = u(row, col + 1);
                if (a == Complex(0.0)) continue;
                const Rotation r{col, std::atan2(std::abs(a), std::abs(b)),
                                 wrap_angle(std::arg(a) - std::arg(b))};
                apply_right_inverse(u, r);
                right.push_back(r);
            }
        } else {
            for (int j = 1; j <= i; ++j) {
                const int row = m + j - i - 1;
                const int col = j - 1;
                const Complex a = u(row - 1, col);
                const Complex b = u(row, col);
                if (b == Complex(0.0)) continue;
                const Rotation r{row - 1, std::atan2(std::abs(b), std::abs(a)),
                                 wrap_angle(kPi + std::arg(b) - std::arg(a))};
                apply_left(u, r, false);
                left.push_back(r);
            }
        }
    }

    // S = L_1^-1 ... L_p^-1 D R_q ... R_1. Push each L^-1 through D:
    // T(t, p)^-1 diag(d1, d2) = diag(-e^{-ip} d2, d2) T(t, arg(-d1/d2)).
    Eigen::VectorXcd d = u.diagonal();
    std::vector<Rotation> moved;
    for (auto it = left.rbegin(); it != left.rend(); ++it) {
        const int k = it->mode;
        const Complex d1 = d(k);
        const Complex d2 = d(k + 1);
        if (it->theta == 0.0) {
            d(k) = d1 * std::polar(1.0, -it->phi);
            continue;
        }
        moved.push_back(Rotation{k, it->theta, wrap_angle(std::arg(-d1 / d2))});
        d(k) = -std::polar(1.0, -it->phi) * d2;
    }

    CircuitPlan plan;
    plan.modes = m;
    for (const Rotation& r : right) {
        plan.elements.push_back(OpticalElement{ElementKind::beam_splitter, {r.mode, r.mode + 1},
                                               r.theta, r.phi});
    }
    // moved holds T'_p first; S = D T'_1 ... T'_p R..., so T'_p is traversed first.
    for (const Rotation& r : moved) {
        plan.elements.push_back(OpticalElement{ElementKind::beam_splitter, {r.mode, r.mode + 1},
                                               r.theta, r.phi});
    }
    plan.residual_phases.resize(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) plan.residual_phases[static_cast<std::size_t>(k)] = wrap_angle(std::arg(d(k)));
    return plan;
}

UnitaryMatrix reconstruct(const CircuitPlan& plan) {
    if (plan.modes < 1) throw Error(ErrorKind::malformed_plan, "plan needs at least one mode");
    if (plan.residual_phases.size() != static_cast<std::size_t>(plan.modes)) {
        throw Error(ErrorKind::malformed_plan, "plan needs one residual phase per mode");
    }
    Matrix u = Matrix::Identity(plan.modes, plan.modes);
    for (std::size_t i = 0; i < plan.elements.size(); ++i) {
        const OpticalElement& e = plan.elements[i];
        check_element(e, plan.modes, i);
        if (e.kind == ElementKind::beam_splitter) {
            apply_left(u, Rotation{e.modes[0], e.theta, e.phi}, false);
        } else {
            u.row(e.modes[0]) *= std::polar(1.0, e.phi);
        }
    }
    for (int k = 0; k < plan.modes; ++k) {
        u.row(k) *= std::polar(1.0, plan.residual_phases[static_cast<std::size_t>(k)]);
    }
    return UnitaryMatrix::trusted(std::move(u));
}

std::string format_plan_table(const CircuitPlan& plan) {
    std::ostringstream os;
    char line[128];
    std::snprintf(line, sizeof line, "%4s  %-14s  %-7s  %12s  %12s\n", "#", "kind", "modes",
                  "theta", "phi");
    os << line;
    for (std::size_t i = 0; i < plan.elements.size(); ++i) {
        const OpticalElement& e = plan.elements[i];
        std::string modes;
        for (std::size_t k = 0; k < e.modes.size(); ++k) {
            modes += (k ? "," : "") + std::to_string(e.modes[k]);
        }
        std::snprintf(line, sizeof line, "%4zu  %-14s  %-7s  %12.8f  %12.8f\n", i,
                      e.kind == ElementKind::beam_splitter ? "beam_splitter" : "phase_shifter",
                      modes.c_str(), e.theta, e.phi);
        os << line;
    }
    os << "residual phases:";
    for (double p : plan.residual_phases) {
        std::snprintf(line, sizeof line, " %.8f", p);
        os << line;
    }
    os << '\n';
    return os.str();
}

} // namespace optiq
