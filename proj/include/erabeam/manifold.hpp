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

#ifndef ERABEAM_MANIFOLD_HPP
#define ERABEAM_MANIFOLD_HPP

#include <Eigen/Dense>
#include <cstdint>

namespace era::manifold {

// Point on the oblique manifold OB(T, N): real T x N matrix with unit-norm
// columns. Together with a point on the complex circle manifold S(N)
// (unit-modulus complex N-vector) it forms the product manifold the
// synthesis solver walks on. Both factors use the embedded Euclidean metric
// and metric-projection (normalization) retractions.
struct ProductPoint {
    Eigen::MatrixXd coeffs;  // oblique factor, T x N
    Eigen::VectorXcd phases; // circle factor, length N
};

struct ProductTangent {
    Eigen::MatrixXd coeffs;
    Eigen::VectorXcd phases;

    static ProductTangent zero(Eigen::Index rows, Eigen::Index cols);
};

// Tolerance used by the on-manifold checks below.
inline constexpr double kManifoldTol = 1e-10;

bool on_oblique(const Eigen::MatrixXd& B, double tol = kManifoldTol);
bool on_circle(const Eigen::VectorXcd& f, double tol = kManifoldTol);

// U minus its per-column radial component: U - B ddiag(B'U).
Eigen::MatrixXd oblique_project(const Eigen::MatrixXd& B, const Eigen::MatrixXd& U);

// Columnwise normalization of B + t*xi. Throws on a vanishing column.
Eigen::MatrixXd oblique_retract(const Eigen::MatrixXd& B, const Eigen::MatrixXd& xi,
                                double t);

// u_n minus Re(conj(f_n) u_n) f_n per entry.
Eigen::VectorXcd circle_project(const Eigen::VectorXcd& f, const Eigen::VectorXcd& u);

// Entrywise (f_n + t*xi_n)/|f_n + t*xi_n|. Throws on a vanishing entry.
Eigen::VectorXcd circle_retract(const Eigen::VectorXcd& f, const Eigen::VectorXcd& xi,
                                double t);

ProductTangent product_project(const ProductPoint& x, const ProductTangent& ambient);
ProductPoint product_retract(const ProductPoint& x, const ProductTangent& xi, double t);

// <xi_B, eta_B>_F + Re<xi_f, eta_f> and the induced norm.
double product_inner(const ProductTangent& a, const ProductTangent& b);
double product_norm(const ProductTangent& a);

// Deterministic random point: normalized standard-normal columns for the
// oblique factor, uniform phases for the circle factor.
ProductPoint random_point(int rows, int cols, std::uint64_t seed);

} // namespace era::manifold

#endif
