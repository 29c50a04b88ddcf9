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

#ifndef ERABEAM_EM_RESPONSE_HPP
#define ERABEAM_EM_RESPONSE_HPP

#include <Eigen/Dense>
#include <vector>

#include "erabeam/geometry.hpp"
#include "erabeam/harmonics.hpp"

namespace era::em {

enum class Regime { far, near };

// One desired-beampattern sample: a direction (far field) or a receiver
// position (near field).
struct SampleTarget {
    Regime regime = Regime::far;
    geometry::Direction direction;          // valid when regime == far
    Eigen::Vector3d position{0.0, 0.0, 0.0}; // valid when regime == near

    static SampleTarget far_sample(const geometry::Direction& dir);
    static SampleTarget near_sample(const Eigen::Vector3d& p_rx);
};

// Array response for one sample in block form: steering entry a_n (unit
// modulus) paired with the basis column y_n. Column n of the dense NT x N
// response matrix is a_n * y_n placed in block n, so the beampattern
// contraction b' A f reduces to sum_n a_n f_n (y_n' b_n); everything here
// works on the blocks and never materializes the dense matrix.
struct EMResponse {
    Eigen::VectorXcd steering; // length N
    Eigen::MatrixXd basis;     // T x N, column n = y_n

    int elements() const { return static_cast<int>(steering.size()); }
    int basis_length() const { return static_cast<int>(basis.rows()); }
};

EMResponse build_response(const geometry::ArrayGeometry& geom,
                          const harmonics::TruncationSpec& spec,
                          const SampleTarget& target);

// |b' A f| evaluated blockwise; b is the stacked NT coefficient vector and f
// the length-N phase vector.
double beampattern(const Eigen::VectorXd& b, const EMResponse& resp,
                   const Eigen::VectorXcd& f);

// Complex field value b' A f before taking the magnitude.
std::complex<double> field_value(const Eigen::VectorXd& b, const EMResponse& resp,
                                 const Eigen::VectorXcd& f);

// Beampattern over a list of targets, order preserved.
std::vector<double> beampattern_grid(const Eigen::VectorXd& b, const Eigen::VectorXcd& f,
                                     const geometry::ArrayGeometry& geom,
                                     const harmonics::TruncationSpec& spec,
                                     const std::vector<SampleTarget>& grid);

} // namespace era::em

#endif
