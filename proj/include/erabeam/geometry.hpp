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

#ifndef ERABEAM_GEOMETRY_HPP
#define ERABEAM_GEOMETRY_HPP

#include <Eigen/Dense>
#include <vector>

namespace era::geometry {

// Inclination theta in [0, pi], azimuth phi in [-pi, pi].
struct Direction {
    double theta = 0.0;
    double phi = 0.0;
};

// Uniform planar array on the z = 0 plane. Element n (0-based) sits at
// (ix*spacing, iy*spacing, 0) with n = ix*ny + iy, ix outermost; this matches
// the Kronecker factor order of the far-field response below.
struct ArrayGeometry {
    int nx = 1;
    int ny = 1;
    double spacing = 0.0;    // meters
    double wavelength = 0.0; // meters
    std::vector<Eigen::Vector3d> positions;

    int size() const { return nx * ny; }
};

ArrayGeometry make_upa(int nx, int ny, double spacing, double wavelength);

// (sin t cos p, sin t sin p, cos t) and its inverse. The inverse requires a
// unit vector (within 1e-9) and maps the poles to phi = 0.
Eigen::Vector3d direction_to_unit(const Direction& dir);
Direction unit_to_direction(const Eigen::Vector3d& q);

// Planar-wave array response: kron(exp(-j 2 pi phx k(nx)), exp(-j 2 pi phy k(ny)))
// with spatial angles phx = d/lambda sin(theta) sin(phi) and
// phy = d/lambda sin(theta) cos(phi). All entries have unit modulus.
Eigen::VectorXcd far_field_arv(const ArrayGeometry& geom, const Direction& dir);

// Spherical-wave response: entry n is exp(-j 2 pi / lambda * ||p_n - p_rx||).
Eigen::VectorXcd near_field_arv(const ArrayGeometry& geom, const Eigen::Vector3d& p_rx);

// Departure direction from element n (0-based) toward the receiver.
Direction element_aod(const ArrayGeometry& geom, int n, const Eigen::Vector3d& p_rx);

// 2 D^2 / lambda with D the aperture diagonal; advisory far-field boundary.
double rayleigh_distance(const ArrayGeometry& geom);

} // namespace era::geometry

#endif
