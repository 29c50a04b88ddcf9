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

#ifndef ERABEAM_VALIDATION_HPP
#define ERABEAM_VALIDATION_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "erabeam/synthesis.hpp"

namespace era::validation {

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;     // the quantity compared against the threshold
    double threshold = 0.0;
    std::string detail;
};

// Max entrywise deviation of the sphere-quadrature Gram matrix from identity.
CheckResult check_orthonormality(int max_degree, double threshold = 1e-9);

// Central finite differences against the analytic Euclidean gradient at
// seeded random points. gradient_fn defaults to the problem's own gradient;
// tests may inject a broken one to confirm the check trips.
using GradientFn = std::function<era::manifold::ProductTangent(
    const synthesis::SynthesisProblem&, const era::manifold::ProductPoint&,
    const Eigen::VectorXd&)>;

CheckResult check_gradient(int n_points = 10, std::uint64_t seed = 7,
                           double threshold = 1e-5, double fd_step = 1e-6,
                           const GradientFn& gradient_fn = {});

// Max relative FD error over the supplied problem at the given points.
double gradient_max_rel_error(const synthesis::SynthesisProblem& problem,
                              const std::vector<era::manifold::ProductPoint>& points,
                              double fd_step, const GradientFn& gradient_fn = {});

// Tangency after projection and unit norms after retraction, on random data.
CheckResult check_manifold_hygiene(std::uint64_t seed = 11, double threshold = 1e-12);

// update_phases must beat random auxiliary phases on a random instance.
CheckResult check_phase_update_optimality(std::uint64_t seed = 13);

// The validate command's fast suite.
std::vector<CheckResult> run_all_checks();

// A deterministic far-field scenario on random directions, used by several
// checks and by the acceptance suite.
synthesis::Scenario random_far_scenario(int nx, int ny, int max_degree, int n_samples,
                                        std::uint64_t seed);

} // namespace era::validation

#endif
