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

#include "erabeam/validation.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace era::validation {

namespace {
constexpr double kPi = std::numbers::pi;
} // namespace

synthesis::Scenario random_far_scenario(int nx, int ny, int max_degree, int n_samples,
                                        std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::uniform_real_distribution<double> level(0.0, 1.5);
    std::uniform_real_distribution<double> weight(0.5, 2.0);

    synthesis::Scenario scn;
    const double wavelength = 0.01;
    scn.geometry = geometry::make_upa(nx, ny, wavelength / 2.0, wavelength);
    scn.truncation = harmonics::TruncationSpec::from_degree(max_degree);
    scn.regime = em::Regime::far;
    for (int s = 0; s < n_samples; ++s) {
        synthesis::Sample sample;
        geometry::Direction dir;
        dir.theta = std::acos(unit(rng));
        dir.phi = angle(rng);
        sample.target = em::SampleTarget::far_sample(dir);
        sample.desired = level(rng) * scn.geometry.size();
        sample.weight = weight(rng);
        scn.samples.push_back(sample);
    }
    return scn;
}

CheckResult check_orthonormality(int max_degree, double threshold) {
    const harmonics::TruncationSpec spec = harmonics::TruncationSpec::from_degree(max_degree);
    const int n_theta = 2 * max_degree + 2;
    const int n_phi = 4 * max_degree + 2;
    const Eigen::MatrixXd gram = harmonics::gram_matrix(spec, n_theta, n_phi);
    const double deviation =
        (gram - Eigen::MatrixXd::Identity(spec.length, spec.length)).cwiseAbs().maxCoeff();

    CheckResult result;
    result.name = "orthonormality";
    result.value = deviation;
    result.threshold = threshold;
    result.passed = deviation < threshold;
    std::ostringstream detail;
    detail << "L=" << max_degree << " T=" << spec.length << " max|G-I|=" << deviation;
    result.detail = detail.str();
    return result;
}

double gradient_max_rel_error(const synthesis::SynthesisProblem& problem,
                              const std::vector<era::manifold::ProductPoint>& points,
                              double fd_step, const GradientFn& gradient_fn) {
    double worst = 0.0;
    for (const era::manifold::ProductPoint& x : points) {
        const Eigen::VectorXd psi =
            problem.update_phases(problem.assemble_coeffs(x.coeffs), x.phases);
        const era::manifold::ProductTangent grad =
            gradient_fn ? gradient_fn(problem, x, psi) : problem.euclidean_gradient(x, psi);

        era::manifold::ProductTangent fd;
        fd.coeffs.resize(x.coeffs.rows(), x.coeffs.cols());
        fd.phases.resize(x.phases.size());

        era::manifold::ProductPoint probe = x;
        for (Eigen::Index j = 0; j < x.coeffs.cols(); ++j) {
            for (Eigen::Index i = 0; i < x.coeffs.rows(); ++i) {
                const double saved = probe.coeffs(i, j);
                probe.coeffs(i, j) = saved + fd_step;
                const double plus = problem.objective(probe, psi);
                probe.coeffs(i, j) = saved - fd_step;
                const double minus = problem.objective(probe, psi);
                probe.coeffs(i, j) = saved;
                fd.coeffs(i, j) = (plus - minus) / (2.0 * fd_step);
            }
        }
        for (Eigen::Index n = 0; n < x.phases.size(); ++n) {
            const std::complex<double> saved = probe.phases[n];
            probe.phases[n] = saved + fd_step;
            const double re_plus = problem.objective(probe, psi);
            probe.phases[n] = saved - fd_step;
            const double re_minus = problem.objective(probe, psi);
            probe.phases[n] = saved + std::complex<double>(0.0, fd_step);
            const double im_plus = problem.objective(probe, psi);
            probe.phases[n] = saved - std::complex<double>(0.0, fd_step);
            const double im_minus = problem.objective(probe, psi);
            probe.phases[n] = saved;
            fd.phases[n] = std::complex<double>((re_plus - re_minus) / (2.0 * fd_step),
                                                (im_plus - im_minus) / (2.0 * fd_step));
        }

        const double fd_norm = era::manifold::product_norm(fd);
        const double grad_norm = era::manifold::product_norm(grad);
        const era::manifold::ProductTangent diff = [&] {
            era::manifold::ProductTangent d;
            d.coeffs = fd.coeffs - grad.coeffs;
            d.phases = fd.phases - grad.phases;
            return d;
        }();
        const double denom = std::max({fd_norm, grad_norm, 1e-30});
        worst = std::max(worst, era::manifold::product_norm(diff) / denom);
    }
    return worst;
}

CheckResult check_gradient(int n_points, std::uint64_t seed, double threshold,
                           double fd_step, const GradientFn& gradient_fn) {
    const synthesis::Scenario scn = random_far_scenario(2, 2, 2, 5, seed);
    const synthesis::SynthesisProblem problem(scn, synthesis::SolverConfig{});

    std::vector<era::manifold::ProductPoint> points;
    points.reserve(n_points);
    for (int p = 0; p < n_points; ++p)
        points.push_back(problem.initial_point(seed + 1000 + static_cast<std::uint64_t>(p)));

    const double worst = gradient_max_rel_error(problem, points, fd_step, gradient_fn);

    CheckResult result;
    result.name = "gradient";
    result.value = worst;
    result.threshold = threshold;
    result.passed = worst < threshold;
    std::ostringstream detail;
    detail << n_points << " points, max rel err=" << worst;
    result.detail = detail.str();
    return result;
}

CheckResult check_manifold_hygiene(std::uint64_t seed, double threshold) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const era::manifold::ProductPoint x =
            era::manifold::random_point(5, 4, seed + trial);
        era::manifold::ProductTangent ambient;
        ambient.coeffs.resize(5, 4);
        for (Eigen::Index j = 0; j < 4; ++j)
            for (Eigen::Index i = 0; i < 5; ++i)
                ambient.coeffs(i, j) = gauss(rng);
        ambient.phases.resize(4);
        for (Eigen::Index n = 0; n < 4; ++n)
            ambient.phases[n] = std::complex<double>(gauss(rng), gauss(rng));

        const era::manifold::ProductTangent xi = era::manifold::product_project(x, ambient);
        // Tangency: ddiag(B' xi_B) = 0 and Re(conj(f_n) xi_f_n) = 0.
        for (Eigen::Index j = 0; j < 4; ++j)
            worst = std::max(worst, std::abs(x.coeffs.col(j).dot(xi.coeffs.col(j))));
        for (Eigen::Index n = 0; n < 4; ++n)
            worst = std::max(worst, std::abs(std::real(std::conj(x.phases[n]) * xi.phases[n])));

        // Retraction lands back on the manifold.
        const era::manifold::ProductPoint moved = era::manifold::product_retract(x, xi, 0.37);
        for (Eigen::Index j = 0; j < 4; ++j)
            worst = std::max(worst, std::abs(moved.coeffs.col(j).norm() - 1.0));
        for (Eigen::Index n = 0; n < 4; ++n)
            worst = std::max(worst, std::abs(std::abs(moved.phases[n]) - 1.0));
    }

    CheckResult result;
    result.name = "manifold-hygiene";
    result.value = worst;
    result.threshold = threshold;
    result.passed = worst < threshold;
    std::ostringstream detail;
    detail << "100 random point/vector pairs, max violation=" << worst;
    result.detail = detail.str();
    return result;
}

CheckResult check_phase_update_optimality(std::uint64_t seed) {
    const synthesis::Scenario scn = random_far_scenario(2, 2, 1, 6, seed);
    const synthesis::SynthesisProblem problem(scn, synthesis::SolverConfig{});
    const era::manifold::ProductPoint x = problem.initial_point(seed + 1);

    const Eigen::VectorXd best_psi =
        problem.update_phases(problem.assemble_coeffs(x.coeffs), x.phases);
    const double best = problem.objective(x, best_psi);

    std::mt19937_64 rng(seed + 2);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    double margin = std::numeric_limits<double>::infinity();
    bool optimal = true;
    for (int trial = 0; trial < 100; ++trial) {
        Eigen::VectorXd psi(problem.sample_count());
        for (int s = 0; s < problem.sample_count(); ++s)
            psi[s] = angle(rng);
        const double value = problem.objective(x, psi);
        optimal = optimal && best <= value + 1e-12;
        margin = std::min(margin, value - best);
    }

    CheckResult result;
    result.name = "phase-update-optimality";
    result.value = margin;
    result.threshold = 0.0;
    result.passed = optimal;
    std::ostringstream detail;
    detail << "100 random psi draws, min margin=" << margin;
    result.detail = detail.str();
    return result;
}

std::vector<CheckResult> run_all_checks() {
    std::vector<CheckResult> results;
    results.push_back(check_orthonormality(4));
    results.push_back(check_gradient());
    results.push_back(check_manifold_hygiene());
    results.push_back(check_phase_update_optimality());
    return results;
}

} // namespace era::validation
