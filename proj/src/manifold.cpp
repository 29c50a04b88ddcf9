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

#include "erabeam/manifold.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace era::manifold {

ProductTangent ProductTangent::zero(Eigen::Index rows, Eigen::Index cols) {
    ProductTangent xi;
    xi.coeffs = Eigen::MatrixXd::Zero(rows, cols);
    xi.phases = Eigen::VectorXcd::Zero(cols);
    return xi;
}

bool on_oblique(const Eigen::MatrixXd& B, double tol) {
    for (Eigen::Index j = 0; j < B.cols(); ++j)
        if (std::abs(B.col(j).norm() - 1.0) > tol)
            return false;
    return true;
}

bool on_circle(const Eigen::VectorXcd& f, double tol) {
    for (Eigen::Index n = 0; n < f.size(); ++n)
        if (std::abs(std::abs(f[n]) - 1.0) > tol)
            return false;
    return true;
}

Eigen::MatrixXd oblique_project(const Eigen::MatrixXd& B, const Eigen::MatrixXd& U) {
    if (B.rows() != U.rows() || B.cols() != U.cols())
        throw std::invalid_argument("oblique_project: shape mismatch");
    const Eigen::RowVectorXd radial = (B.array() * U.array()).colwise().sum();
    return U - B * radial.asDiagonal();
}

Eigen::MatrixXd oblique_retract(const Eigen::MatrixXd& B, const Eigen::MatrixXd& xi,
                                double t) {
    if (B.rows() != xi.rows() || B.cols() != xi.cols())
        throw std::invalid_argument("oblique_retract: shape mismatch");
    Eigen::MatrixXd moved = B + t * xi;
    for (Eigen::Index j = 0; j < moved.cols(); ++j) {
        const double norm = moved.col(j).norm();
        if (norm == 0.0)
            throw std::runtime_error("oblique_retract: column collapsed to zero");
        moved.col(j) /= norm;
    }
    return moved;
}

Eigen::VectorXcd circle_project(const Eigen::VectorXcd& f, const Eigen::VectorXcd& u) {
    if (f.size() != u.size())
        throw std::invalid_argument("circle_project: shape mismatch");
    Eigen::VectorXcd tangent(u.size());
    for (Eigen::Index n = 0; n < u.size(); ++n)
        tangent[n] = u[n] - std::real(std::conj(f[n]) * u[n]) * f[n];
    return tangent;
}

Eigen::VectorXcd circle_retract(const Eigen::VectorXcd& f, const Eigen::VectorXcd& xi,
                                double t) {
    if (f.size() != xi.size())
        throw std::invalid_argument("circle_retract: shape mismatch");
    Eigen::VectorXcd moved = f + t * xi;
    for (Eigen::Index n = 0; n < moved.size(); ++n) {
        const double mag = std::abs(moved[n]);
        if (mag == 0.0)
            throw std::runtime_error("circle_retract: entry collapsed to zero");
        moved[n] /= mag;
    }
    return moved;
}

ProductTangent product_project(const ProductPoint& x, const ProductTangent& ambient) {
    ProductTangent xi;
    xi.coeffs = oblique_project(x.coeffs, ambient.coeffs);
    xi.phases = circle_project(x.phases, ambient.phases);
    return xi;
}

ProductPoint product_retract(const ProductPoint& x, const ProductTangent& xi, double t) {
    ProductPoint moved;
    moved.coeffs = oblique_retract(x.coeffs, xi.coeffs, t);
    moved.phases = circle_retract(x.phases, xi.phases, t);
    return moved;
}

double product_inner(const ProductTangent& a, const ProductTangent& b) {
    if (a.coeffs.rows() != b.coeffs.rows() || a.coeffs.cols() != b.coeffs.cols() ||
        a.phases.size() != b.phases.size())
        throw std::invalid_argument("product_inner: shape mismatch");
    const double oblique_part = (a.coeffs.array() * b.coeffs.array()).sum();
    const double circle_part = a.phases.dot(b.phases).real();
    return oblique_part + circle_part;
}

double product_norm(const ProductTangent& a) {
    return std::sqrt(product_inner(a, a));
}

ProductPoint random_point(int rows, int cols, std::uint64_t seed) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("random_point: dimensions must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

    ProductPoint x;
    x.coeffs.resize(rows, cols);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i)
            x.coeffs(i, j) = gauss(rng);
        x.coeffs.col(j).normalize();
    }
    x.phases.resize(cols);
    for (int n = 0; n < cols; ++n) {
        const double beta = angle(rng);
        x.phases[n] = std::complex<double>(std::cos(beta), std::sin(beta));
    }
    return x;
}

} // namespace era::manifold
