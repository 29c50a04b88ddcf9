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

#include "erabeam/synthesis.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace era::synthesis {

namespace {

constexpr double kPi = std::numbers::pi;

void validate_config(const SolverConfig& cfg) {
    if (cfg.outer_max < 0 || cfg.inner_max < 1)
        throw std::invalid_argument("SolverConfig: outer_max >= 0 and inner_max >= 1 required");
    if (cfg.grad_tol <= 0.0 || cfg.obj_tol <= 0.0)
        throw std::invalid_argument("SolverConfig: tolerances must be positive");
    if (cfg.armijo.initial_step <= 0.0 || cfg.armijo.contraction <= 0.0 ||
        cfg.armijo.contraction >= 1.0 || cfg.armijo.sufficient_decrease <= 0.0 ||
        cfg.armijo.sufficient_decrease >= 1.0 || cfg.armijo.max_backtracks < 1)
        throw std::invalid_argument("SolverConfig: invalid Armijo parameters");
    if (cfg.positivity == PositivityMode::fixed_b00 && !(cfg.rho > 0.0 && cfg.rho < 1.0))
        throw std::invalid_argument("SolverConfig: rho must lie in (0, 1)");
    if (cfg.restarts < 1)
        throw std::invalid_argument("SolverConfig: restarts must be >= 1");
}

void validate_scenario(const Scenario& scn) {
    if (scn.samples.empty())
        throw std::invalid_argument("Scenario: at least one sample required");
    if (scn.element_power <= 0.0)
        throw std::invalid_argument("Scenario: element power must be positive");
    for (const Sample& sample : scn.samples) {
        if (sample.desired < 0.0)
            throw std::invalid_argument("Scenario: desired levels must be nonnegative");
        if (sample.weight <= 0.0)
            throw std::invalid_argument("Scenario: sample weights must be positive");
        if (sample.target.regime != scn.regime)
            throw std::invalid_argument("Scenario: sample regime differs from scenario regime");
    }
}

// xi + scale * eta, blockwise.
manifold::ProductTangent axpy(const manifold::ProductTangent& xi, double scale,
                              const manifold::ProductTangent& eta) {
    manifold::ProductTangent out;
    out.coeffs = xi.coeffs + scale * eta.coeffs;
    out.phases = xi.phases + scale * eta.phases;
    return out;
}

manifold::ProductTangent negate(const manifold::ProductTangent& xi) {
    manifold::ProductTangent out;
    out.coeffs = -xi.coeffs;
    out.phases = -xi.phases;
    return out;
}

} // namespace

SynthesisProblem::SynthesisProblem(Scenario scenario, SolverConfig config,
                                   bool optimize_coeffs)
    : scenario_(std::move(scenario)),
      config_(config),
      optimize_coeffs_(optimize_coeffs) {
    validate_scenario(scenario_);
    validate_config(config_);
    n_elements_ = scenario_.geometry.size();

    const int t_len = scenario_.truncation.length;
    if (config_.positivity == PositivityMode::fixed_b00) {
        if (t_len < 2)
            throw std::invalid_argument(
                "SynthesisProblem: fixed-b00 positivity needs truncation degree >= 1");
        oblique_rows_ = t_len - 1;
        frozen_first_ = config_.rho;
        coeff_scale_ = std::sqrt(1.0 - config_.rho * config_.rho);
    } else {
        oblique_rows_ = t_len;
        frozen_first_ = 0.0;
        coeff_scale_ = 1.0;
    }

    responses_.reserve(scenario_.samples.size());
    for (const Sample& sample : scenario_.samples)
        responses_.push_back(
            em::build_response(scenario_.geometry, scenario_.truncation, sample.target));
}

Eigen::VectorXd SynthesisProblem::assemble_coeffs(const Eigen::MatrixXd& B) const {
    if (B.rows() != oblique_rows_ || B.cols() != n_elements_)
        throw std::invalid_argument("assemble_coeffs: oblique factor has wrong shape");
    const int t_len = scenario_.truncation.length;
    const double sqrt_p = std::sqrt(scenario_.element_power);
    Eigen::VectorXd b(static_cast<Eigen::Index>(n_elements_) * t_len);
    for (int n = 0; n < n_elements_; ++n) {
        Eigen::VectorBlock<Eigen::VectorXd> block = b.segment(n * t_len, t_len);
        if (config_.positivity == PositivityMode::fixed_b00) {
            block[0] = sqrt_p * frozen_first_;
            block.tail(t_len - 1) = sqrt_p * coeff_scale_ * B.col(n);
        } else {
            block = sqrt_p * B.col(n);
        }
    }
    return b;
}

void SynthesisProblem::evaluate(const manifold::ProductPoint& x, const Eigen::VectorXd& psi,
                                double* objective_out,
                                manifold::ProductTangent* gradient_out) const {
    if (x.coeffs.rows() != oblique_rows_ || x.coeffs.cols() != n_elements_ ||
        x.phases.size() != n_elements_)
        throw std::invalid_argument("evaluate: point has wrong shape");
    if (psi.size() != sample_count())
        throw std::invalid_argument("evaluate: psi length differs from sample count");

    const double sqrt_p = std::sqrt(scenario_.element_power);
    double obj = 0.0;
    if (gradient_out) {
        gradient_out->coeffs = Eigen::MatrixXd::Zero(oblique_rows_, n_elements_);
        gradient_out->phases = Eigen::VectorXcd::Zero(n_elements_);
    }

    for (int s = 0; s < sample_count(); ++s) {
        const em::EMResponse& resp = responses_[s];
        const Sample& sample = scenario_.samples[s];

        // Per-element gains g_n = rho*y_n[0] + scale*(y_n[1:]' B_n) in
        // positivity mode, or plain y_n' B_n otherwise.
        Eigen::RowVectorXd gains;
        if (config_.positivity == PositivityMode::fixed_b00) {
            gains = frozen_first_ * resp.basis.row(0) +
                    coeff_scale_ *
                        (resp.basis.bottomRows(oblique_rows_).array() * x.coeffs.array())
                            .colwise()
                            .sum()
                            .matrix();
        } else {
            gains = (resp.basis.array() * x.coeffs.array()).colwise().sum();
        }

        // w_n = a_n g_n, z = sqrt(P) f' w, r = D e^{j psi} - z.
        const Eigen::VectorXcd field_weights =
            resp.steering.array() * gains.transpose().array().cast<std::complex<double>>();
        const std::complex<double> z =
            sqrt_p * (field_weights.array() * x.phases.array()).sum();
        const std::complex<double> r =
            std::polar(sample.desired, psi[s]) - z;
        obj += sample.weight * std::norm(r);

        if (gradient_out) {
            const double grad_coef = -2.0 * sqrt_p * sample.weight;
            const Eigen::RowVectorXd col_factors =
                (std::conj(r) * (resp.steering.array() * x.phases.array()))
                    .real()
                    .transpose();
            if (config_.positivity == PositivityMode::fixed_b00) {
                gradient_out->coeffs.noalias() +=
                    (grad_coef * coeff_scale_) * resp.basis.bottomRows(oblique_rows_) *
                    col_factors.asDiagonal();
            } else {
                gradient_out->coeffs.noalias() +=
                    grad_coef * resp.basis * col_factors.asDiagonal();
            }
            gradient_out->phases += (grad_coef * r) * field_weights.conjugate();
        }
    }
    if (objective_out)
        *objective_out = obj;
}

double SynthesisProblem::objective(const manifold::ProductPoint& x,
                                   const Eigen::VectorXd& psi) const {
    double obj = 0.0;
    evaluate(x, psi, &obj, nullptr);
    return obj;
}

manifold::ProductTangent SynthesisProblem::euclidean_gradient(
    const manifold::ProductPoint& x, const Eigen::VectorXd& psi) const {
    manifold::ProductTangent grad;
    evaluate(x, psi, nullptr, &grad);
    return grad;
}

Eigen::VectorXcd SynthesisProblem::field_values(const Eigen::VectorXd& b,
                                                const Eigen::VectorXcd& f) const {
    Eigen::VectorXcd values(sample_count());
    for (int s = 0; s < sample_count(); ++s)
        values[s] = em::field_value(b, responses_[s], f);
    return values;
}

double SynthesisProblem::residual(const Eigen::VectorXd& b, const Eigen::VectorXcd& f) const {
    const Eigen::VectorXcd z = field_values(b, f);
    double total = 0.0;
    for (int s = 0; s < sample_count(); ++s) {
        const double miss = scenario_.samples[s].desired - std::abs(z[s]);
        total += scenario_.samples[s].weight * miss * miss;
    }
    return total;
}

double SynthesisProblem::residual(const manifold::ProductPoint& x) const {
    return residual(assemble_coeffs(x.coeffs), x.phases);
}

Eigen::VectorXd SynthesisProblem::update_phases(const Eigen::VectorXd& b,
                                                const Eigen::VectorXcd& f) const {
    const Eigen::VectorXcd z = field_values(b, f);
    Eigen::VectorXd psi(sample_count());
    for (int s = 0; s < sample_count(); ++s)
        psi[s] = (z[s] == std::complex<double>(0.0, 0.0))
                     ? 0.0
                     : std::atan2(z[s].imag(), z[s].real());
    return psi;
}

Eigen::VectorXd SynthesisProblem::update_phases(const manifold::ProductPoint& x) const {
    return update_phases(assemble_coeffs(x.coeffs), x.phases);
}

manifold::ProductPoint SynthesisProblem::initial_point(std::uint64_t seed) const {
    return manifold::random_point(oblique_rows_, n_elements_, seed);
}

manifold::ProductPoint SynthesisProblem::inner_solve(const manifold::ProductPoint& start,
                                                     const Eigen::VectorXd& psi,
                                                     InnerStats* stats) const {
    InnerStats local;
    manifold::ProductPoint x = start;
    double obj = objective(x, psi);

    auto riemannian_gradient = [&](const manifold::ProductPoint& point) {
        manifold::ProductTangent grad =
            manifold::product_project(point, euclidean_gradient(point, psi));
        if (!optimize_coeffs_)
            grad.coeffs.setZero();
        return grad;
    };

    manifold::ProductTangent grad = riemannian_gradient(x);
    double grad_norm_sq = manifold::product_inner(grad, grad);
    manifold::ProductTangent direction = negate(grad);

    for (int iter = 0; iter < config_.inner_max; ++iter) {
        if (std::sqrt(grad_norm_sq) <= config_.grad_tol)
            break;

        double slope = manifold::product_inner(grad, direction);
        if (slope >= 0.0) { // stale conjugate direction; restart on steepest descent
            direction = negate(grad);
            slope = -grad_norm_sq;
        }

        double step = config_.armijo.initial_step;
        bool accepted = false;
        manifold::ProductPoint trial;
        double trial_obj = 0.0;
        for (int bt = 0; bt <= config_.armijo.max_backtracks; ++bt) {
            trial = manifold::product_retract(x, direction, step);
            trial_obj = objective(trial, psi);
            if (trial_obj <= obj + config_.armijo.sufficient_decrease * step * slope) {
                accepted = true;
                break;
            }
            step *= config_.armijo.contraction;
        }
        if (!accepted) {
            local.stalled = true;
            break;
        }

        manifold::ProductTangent new_grad = riemannian_gradient(trial);
        const double new_grad_norm_sq = manifold::product_inner(new_grad, new_grad);

        if (config_.solver == SolverKind::conjugate_gradient && grad_norm_sq > 0.0) {
            // Polak-Ribiere with nonnegativity restart; previous quantities are
            // carried to the new tangent space by projection.
            const manifold::ProductTangent grad_moved =
                manifold::product_project(trial, grad);
            const manifold::ProductTangent dir_moved =
                manifold::product_project(trial, direction);
            const double beta = std::max(
                0.0, (new_grad_norm_sq - manifold::product_inner(new_grad, grad_moved)) /
                         grad_norm_sq);
            direction = axpy(negate(new_grad), beta, dir_moved);
        } else {
            direction = negate(new_grad);
        }

        const double rel_decrease =
            (obj - trial_obj) / std::max(obj, std::numeric_limits<double>::min());
        x = trial;
        obj = trial_obj;
        grad = new_grad;
        grad_norm_sq = new_grad_norm_sq;
        local.iterations = iter + 1;
        if (rel_decrease < config_.obj_tol)
            break;
    }

    local.grad_norm = std::sqrt(grad_norm_sq);
    if (stats)
        *stats = local;
    return x;
}

SolveResult SynthesisProblem::solve_from(const manifold::ProductPoint& start) const {
    SolveResult result;
    result.solver_used = config_.solver;

    manifold::ProductPoint x = start;
    result.history.push_back(residual(x));

    bool settled = false;
    for (int k = 0; k < config_.outer_max; ++k) {
        const Eigen::VectorXd psi = update_phases(x);
        InnerStats stats;
        x = inner_solve(x, psi, &stats);
        result.inner_iterations += stats.iterations;
        result.line_search_stalled = result.line_search_stalled || stats.stalled;

        const double prev = result.history.back();
        const double current = residual(x);
        result.history.push_back(current);
        result.outer_iterations = k + 1;

        const double rel_decrease =
            (prev - current) / std::max(prev, std::numeric_limits<double>::min());
        if (rel_decrease < config_.obj_tol) {
            settled = true;
            break;
        }
    }
    result.hit_outer_limit = !settled && config_.outer_max > 0;

    result.coeffs = assemble_coeffs(x.coeffs);
    result.phases = x.phases;
    result.aux_phases = update_phases(result.coeffs, result.phases);
    result.residual = result.history.back();
    result.achieved = field_values(result.coeffs, result.phases).cwiseAbs();
    if (config_.positivity == PositivityMode::fixed_b00)
        result.min_element_gain =
            min_pattern_gain(result.coeffs, scenario_.truncation, n_elements_);
    return result;
}

SolveResult SynthesisProblem::solve() const {
    SolveResult best;
    for (int r = 0; r < config_.restarts; ++r) {
        const std::uint64_t seed = config_.seed + static_cast<std::uint64_t>(r);
        manifold::ProductPoint x0 = initial_point(seed);
        if (config_.warm_start == WarmStart::isotropic) {
            SolverConfig iso_cfg = config_;
            iso_cfg.seed = seed;
            iso_cfg.restarts = 1;
            const SolveResult iso = synthesize_isotropic(scenario_, iso_cfg);
            x0.phases = iso.phases;
            if (config_.positivity == PositivityMode::off) {
                // Start at the baseline itself: first coefficient of each
                // element carries the whole unit norm.
                x0.coeffs.setZero();
                x0.coeffs.row(0).setOnes();
            }
        }
        SolveResult candidate = solve_from(x0);
        if (r == 0 || candidate.residual < best.residual)
            best = std::move(candidate);
    }
    return best;
}

Eigen::VectorXd isotropic_coeffs(const Scenario& scenario) {
    const int t_len = scenario.truncation.length;
    const int n_elem = scenario.geometry.size();
    Eigen::VectorXd b =
        Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_elem) * t_len);
    const double sqrt_p = std::sqrt(scenario.element_power);
    for (int n = 0; n < n_elem; ++n)
        b[static_cast<Eigen::Index>(n) * t_len] = sqrt_p;
    return b;
}

SolveResult synthesize(const Scenario& scenario, const SolverConfig& config) {
    return SynthesisProblem(scenario, config).solve();
}

SolveResult synthesize_isotropic(const Scenario& scenario, const SolverConfig& config) {
    Scenario iso_scenario = scenario;
    iso_scenario.truncation = harmonics::TruncationSpec::from_degree(0);

    SolverConfig iso_config = config;
    iso_config.positivity = PositivityMode::off;
    iso_config.warm_start = WarmStart::none;

    const SynthesisProblem problem(iso_scenario, iso_config, /*optimize_coeffs=*/false);
    SolveResult best;
    for (int r = 0; r < config.restarts; ++r) {
        manifold::ProductPoint x0 =
            problem.initial_point(config.seed + static_cast<std::uint64_t>(r));
        x0.coeffs.setOnes(); // the frozen isotropic block
        SolveResult candidate = problem.solve_from(x0);
        if (r == 0 || candidate.residual < best.residual)
            best = std::move(candidate);
    }

    // Re-express the frozen block at the caller's truncation so pattern and
    // coefficient exports line up with the requested L.
    Eigen::VectorXd expanded = isotropic_coeffs(scenario);
    best.coeffs = std::move(expanded);
    best.min_element_gain = std::numeric_limits<double>::quiet_NaN();
    return best;
}

double min_pattern_gain(const Eigen::VectorXd& coeffs,
                        const harmonics::TruncationSpec& spec, int n_elements) {
    const int t_len = spec.length;
    if (coeffs.size() != static_cast<Eigen::Index>(n_elements) * t_len)
        throw std::invalid_argument("min_pattern_gain: coefficient length mismatch");
    const Eigen::Map<const Eigen::MatrixXd> blocks(coeffs.data(), t_len, n_elements);

    double min_gain = std::numeric_limits<double>::infinity();
    for (int theta_deg = 0; theta_deg <= 180; ++theta_deg) {
        const double theta = theta_deg * kPi / 180.0;
        for (int phi_deg = -180; phi_deg < 180; ++phi_deg) {
            const double phi = phi_deg * kPi / 180.0;
            const Eigen::VectorXd y = harmonics::basis_vector(spec, theta, phi);
            min_gain = std::min(min_gain, (y.transpose() * blocks).minCoeff());
        }
    }
    return min_gain;
}

} // namespace era::synthesis
