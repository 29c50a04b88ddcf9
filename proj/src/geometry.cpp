// SPDX-License-Identifier: Apache-2.0
//
// era-beam: beampattern synthesis for electromagnetically reconfigurable antenna arrays
// Copyright (C) 2026 era-beam developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "erabeam/geometry.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace era::geometry {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr std::complex<double> kImag{0.0, 1.0};
} // namespace

ArrayGeometry make_upa(int nx, int ny, double spacing, double wavelength) {
    if (nx < 1 || ny < 1)
        throw std::invalid_argument("make_upa: nx and ny must be >= 1");
    if (spacing <= 0.0 || wavelength <= 0.0)
        throw std::invalid_argument("make_upa: spacing and wavelength must be positive");

    ArrayGeometry geom;
    geom.nx = nx;
    geom.ny = ny;
    geom.spacing = spacing;
    geom.wavelength = wavelength;
    geom.positions.reserve(static_cast<std::size_t>(nx) * ny);
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy)
            geom.positions.emplace_back(ix * spacing, iy * spacing, 0.0);
    return geom;
}

Eigen::Vector3d direction_to_unit(const Direction& dir) {
    if (!(dir.theta >= 0.0 && dir.theta <= kPi))
        throw std::domain_error("direction_to_unit: theta must lie in [0, pi]");
    const double st = std::sin(dir.theta);
    return {st * std::cos(dir.phi), st * std::sin(dir.phi), std::cos(dir.theta)};
}

Direction unit_to_direction(const Eigen::Vector3d& q) {
    if (std::abs(q.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("unit_to_direction: input is not a unit vector");
    Direction dir;
    dir.theta = std::acos(std::clamp(q.z(), -1.0, 1.0));
    dir.phi = (q.x() == 0.0 && q.y() == 0.0) ? 0.0 : std::atan2(q.y(), q.x());
    return dir;
}

Eigen::VectorXcd far_field_arv(const ArrayGeometry& geom, const Direction& dir) {
    const double st = std::sin(dir.theta);
    const double ratio = geom.spacing / geom.wavelength;
    const double phase_x = ratio * st * std::sin(dir.phi);
    const double phase_y = ratio * st * std::cos(dir.phi);

    Eigen::VectorXcd arv(geom.size());
    for (int ix = 0; ix < geom.nx; ++ix)
        for (int iy = 0; iy < geom.ny; ++iy)
            arv[ix * geom.ny + iy] =
                std::exp(-kImag * (2.0 * kPi * (phase_x * ix + phase_y * iy)));
    return arv;
}

Eigen::VectorXcd near_field_arv(const ArrayGeometry& geom, const Eigen::Vector3d& p_rx) {
    Eigen::VectorXcd arv(geom.size());
    for (int n = 0; n < geom.size(); ++n) {
        const double dist = (geom.positions[n] - p_rx).norm();
        if (dist == 0.0)
            throw std::invalid_argument(
                "near_field_arv: receiver coincides with element " + std::to_string(n + 1));
        arv[n] = std::exp(-kImag * (2.0 * kPi / geom.wavelength * dist));
    }
    return arv;
}

Direction element_aod(const ArrayGeometry& geom, int n, const Eigen::Vector3d& p_rx) {
    if (n < 0 || n >= geom.size())
        throw std::out_of_range("element_aod: element index out of range");
    const Eigen::Vector3d delta = p_rx - geom.positions[n];
    const double dist = delta.norm();
    if (dist == 0.0)
        throw std::invalid_argument("element_aod: receiver coincides with element " +
                                    std::to_string(n + 1));
    const Eigen::Vector3d u = delta / dist;
    Direction dir;
    dir.theta = std::acos(std::clamp(u.z(), -1.0, 1.0));
    dir.phi = (u.x() == 0.0 && u.y() == 0.0) ? 0.0 : std::atan2(u.y(), u.x());
    return dir;
}

double rayleigh_distance(const ArrayGeometry& geom) {
    const double dx = (geom.nx - 1) * geom.spacing;
    const double dy = (geom.ny - 1) * geom.spacing;
    const double diag = std::hypot(dx, dy);
    return 2.0 * diag * diag / geom.wavelength;
}

} // namespace era::geometry
