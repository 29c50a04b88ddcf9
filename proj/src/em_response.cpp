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

#include "erabeam/em_response.hpp"

#include <stdexcept>
#include <string>

namespace era::em {

SampleTarget SampleTarget::far_sample(const geometry::Direction& dir) {
    SampleTarget target;
    target.regime = Regime::far;
    target.direction = dir;
    return target;
}

SampleTarget SampleTarget::near_sample(const Eigen::Vector3d& p_rx) {
    SampleTarget target;
    target.regime = Regime::near;
    target.position = p_rx;
    return target;
}

EMResponse build_response(const geometry::ArrayGeometry& geom,
                          const harmonics::TruncationSpec& spec,
                          const SampleTarget& target) {
    EMResponse resp;
    const int n_elem = geom.size();
    resp.basis.resize(spec.length, n_elem);
    if (target.regime == Regime::far) {
        resp.steering = geometry::far_field_arv(geom, target.direction);
        // One angle of departure shared by all elements.
        resp.basis.colwise() =
            harmonics::basis_vector(spec, target.direction.theta, target.direction.phi);
    } else {
        resp.steering = geometry::near_field_arv(geom, target.position);
        for (int n = 0; n < n_elem; ++n) {
            const geometry::Direction aod = geometry::element_aod(geom, n, target.position);
            resp.basis.col(n) = harmonics::basis_vector(spec, aod.theta, aod.phi);
        }
    }
    return resp;
}

std::complex<double> field_value(const Eigen::VectorXd& b, const EMResponse& resp,
                                 const Eigen::VectorXcd& f) {
    const int n_elem = resp.elements();
    const int t_len = resp.basis_length();
    if (b.size() != static_cast<Eigen::Index>(n_elem) * t_len)
        throw std::invalid_argument("field_value: coefficient vector length " +
                                    std::to_string(b.size()) + " != N*T=" +
                                    std::to_string(n_elem * t_len));
    if (f.size() != n_elem)
        throw std::invalid_argument("field_value: phase vector length mismatch");

    const Eigen::Map<const Eigen::MatrixXd> blocks(b.data(), t_len, n_elem);
    const Eigen::VectorXd gains = (resp.basis.array() * blocks.array()).colwise().sum();
    return (gains.cast<std::complex<double>>().array() * resp.steering.array() * f.array())
        .sum();
}

double beampattern(const Eigen::VectorXd& b, const EMResponse& resp,
                   const Eigen::VectorXcd& f) {
    return std::abs(field_value(b, resp, f));
}

std::vector<double> beampattern_grid(const Eigen::VectorXd& b, const Eigen::VectorXcd& f,
                                     const geometry::ArrayGeometry& geom,
                                     const harmonics::TruncationSpec& spec,
                                     const std::vector<SampleTarget>& grid) {
    std::vector<double> values;
    values.reserve(grid.size());
    for (const SampleTarget& target : grid)
        values.push_back(beampattern(b, build_response(geom, spec, target), f));
    return values;
}

} // namespace era::em
