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

#ifndef ERABEAM_SYNTHESIS_HPP
#define ERABEAM_SYNTHESIS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <vector>

#include "erabeam/em_response.hpp"
#include "erabeam/geometry.hpp"
#include "erabeam/harmonics.hpp"
#include "erabeam/manifold.hpp"

namespace era::synthesis {

// One desired-beampattern sample.
struct Sample {
    em::SampleTarget target;
    double desired = 0.0; // D_s >= 0
    double weight = 1.0;  // w_s > 0
};

// A full synthesis instance. element_power is P in ||b_n||^2 = P; the default
// 4*pi makes the unit-gain isotropic element exactly feasible
// (2*sqrt(pi) * Y_0^0 = 1).
struct Scenario {
    geometry::ArrayGeometry geometry;
    harmonics::TruncationSpec truncation;
    em::Regime regime = em::Regime::far;
    double element_power = 4.0 * 3.14159265358979323846;
    std::vector<Sample> samples;
};

enum class SolverKind { gradient_descent, conjugate_gradient };
enum class PositivityMode { off, fixed_b00 };
enum class WarmStart { none, isotropic };

struct ArmijoParams {
    double initial_step = 1.0;
    double contraction = 0.5;
    double sufficient_decrease = 1e-4;
    int max_backtracks = 50;
};

struct SolverConfig {
    int outer_max = 200;
    int inner_max = 100;
    double grad_tol = 1e-8;
    double obj_tol = 1e-10;
    ArmijoParams armijo;
    SolverKind solver = SolverKind::conjugate_gradient;
    std::uint64_t seed = 1;
    PositivityMode positivity = PositivityMode::off;
    double rho = 0.8; // fixed-b00 fraction, in (0, 1)
    WarmStart warm_start = WarmStart::none;
    int restarts = 1;
};

struct InnerStats {
    int iterations = 0;
    double grad_norm = 0.0;
    bool stalled = false; // Armijo search exhausted its backtracks
};

struct SolveResult {
    Eigen::VectorXd coeffs;          // stacked b, length N*T, ||b_n||^2 = P
    Eigen::VectorXcd phases;         // f, unit modulus
    Eigen::VectorXd aux_phases;      // psi, length S
    std::vector<double> history;     // residual per outer iteration; [0] is the
                                     // initial point
    double residual = 0.0;           // weighted squared magnitude mismatch
    Eigen::VectorXd achieved;        // |b' A_s f| per sample
    int outer_iterations = 0;
    long inner_iterations = 0;
    bool hit_outer_limit = false;
    bool line_search_stalled = false;
    SolverKind solver_used = SolverKind::conjugate_gradient;
    // Minimum of the per-element radiation pattern over a 1-degree grid.
    // Scanned (and only meaningful) when positivity mode is on.
    double min_element_gain = std::numeric_limits<double>::quiet_NaN();
};

// Beampattern synthesis by block-coordinate descent: exact auxiliary-phase
// updates psi_s = arg(b' A_s f) alternate with Riemannian descent over the
// product of the oblique manifold (coefficient columns) and the complex
// circle manifold (phase shifts). EM responses for the S samples are built
// once at construction and shared across iterations.
//
// Under PositivityMode::fixed_b00 the first coefficient of every element is
// frozen at sqrt(P)*rho and the oblique factor shrinks to T-1 rows scaled by
// sqrt(1-rho^2), keeping ||b_n||^2 = P exactly.
class SynthesisProblem {
  public:
    SynthesisProblem(Scenario scenario, SolverConfig config,
                     bool optimize_coeffs = true);

    const Scenario& scenario() const { return scenario_; }
    const SolverConfig& config() const { return config_; }
    const std::vector<em::EMResponse>& responses() const { return responses_; }

    // Rows of the oblique factor: T, or T-1 under fixed-b00.
    int oblique_rows() const { return oblique_rows_; }
    int elements() const { return n_elements_; }
    int sample_count() const { return static_cast<int>(scenario_.samples.size()); }

    // sum_s w_s |D_s exp(j psi_s) - sqrt(P) vec(B)' A_s f|^2 at fixed psi.
    double objective(const manifold::ProductPoint& x, const Eigen::VectorXd& psi) const;

    // sum_s w_s (D_s - |b' A_s f|)^2.
    double residual(const Eigen::VectorXd& b, const Eigen::VectorXcd& f) const;
    double residual(const manifold::ProductPoint& x) const;

    // psi_s = arg(b' A_s f), with arg(0) defined as 0.
    Eigen::VectorXd update_phases(const Eigen::VectorXd& b, const Eigen::VectorXcd& f) const;
    Eigen::VectorXd update_phases(const manifold::ProductPoint& x) const;

    // Ambient (Euclidean) gradient of objective() in (B, f). The f block uses
    // the d/dRe + j d/dIm convention, which is what the circle projection
    // expects.
    manifold::ProductTangent euclidean_gradient(const manifold::ProductPoint& x,
                                                const Eigen::VectorXd& psi) const;

    // Riemannian descent on the product manifold at fixed psi.
    manifold::ProductPoint inner_solve(const manifold::ProductPoint& start,
                                       const Eigen::VectorXd& psi,
                                       InnerStats* stats = nullptr) const;

    // Full block-coordinate descent from a seeded random point (or warm
    // start, per config) / from an explicit starting point.
    SolveResult solve() const;
    SolveResult solve_from(const manifold::ProductPoint& start) const;

    // Physical coefficient vector b for an oblique point; includes sqrt(P)
    // and, under fixed-b00, the frozen first coefficients.
    Eigen::VectorXd assemble_coeffs(const Eigen::MatrixXd& B) const;

    // Per-sample complex field values b' A_s f.
    Eigen::VectorXcd field_values(const Eigen::VectorXd& b, const Eigen::VectorXcd& f) const;

    // Seeded random starting point with the right shapes.
    manifold::ProductPoint initial_point(std::uint64_t seed) const;

  private:
    void evaluate(const manifold::ProductPoint& x, const Eigen::VectorXd& psi,
                  double* objective_out, manifold::ProductTangent* gradient_out) const;

    Scenario scenario_;
    SolverConfig config_;
    bool optimize_coeffs_;
    int n_elements_;
    int oblique_rows_;
    double coeff_scale_;  // sqrt(1-rho^2) under fixed-b00, else 1
    double frozen_first_; // rho under fixed-b00, else 0
    std::vector<em::EMResponse> responses_;
};

// The fixed isotropic coefficient block: sqrt(P) in the first slot of every
// element, zero elsewhere (length N*T).
Eigen::VectorXd isotropic_coeffs(const Scenario& scenario);

SolveResult synthesize(const Scenario& scenario, const SolverConfig& config);

// Phase-only baseline: coefficients frozen at isotropic_coeffs(), the circle
// factor optimized with the same block-coordinate structure.
SolveResult synthesize_isotropic(const Scenario& scenario, const SolverConfig& config);

// Minimum per-element pattern gain over a 1-degree sphere grid.
double min_pattern_gain(const Eigen::VectorXd& coeffs,
                        const harmonics::TruncationSpec& spec, int n_elements);

} // namespace era::synthesis

#endif
