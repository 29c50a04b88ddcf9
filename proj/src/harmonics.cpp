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

#include "erabeam/harmonics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace era::harmonics {

namespace {
constexpr double kPi = std::numbers::pi;
}

TruncationSpec TruncationSpec::from_degree(int max_degree) {
    if (max_degree < 0)
        throw std::invalid_argument("TruncationSpec: max_degree must be nonnegative");
    TruncationSpec spec;
    spec.max_degree = max_degree;
    spec.length = (max_degree + 1) * (max_degree + 1);
    return spec;
}

double assoc_legendre(int degree, int order, double x) {
    if (order < 0 || order > degree)
        throw std::domain_error("assoc_legendre: requires 0 <= m <= l, got l=" +
                                std::to_string(degree) + " m=" + std::to_string(order));
    if (!(std::abs(x) <= 1.0))
        throw std::domain_error("assoc_legendre: |x| must be <= 1");

    // Seed P_m^m = (2m-1)!! (1-x^2)^{m/2}, then climb in degree.
    double pmm = 1.0;
    if (order > 0) {
        const double s = std::sqrt((1.0 - x) * (1.0 + x));
        double fact = 1.0;
        for (int i = 0; i < order; ++i) {
            pmm *= fact * s;
            fact += 2.0;
        }
    }
    if (degree == order)
        return pmm;

    double pm1 = pmm;                          // P_m^m
    double p = x * (2.0 * order + 1.0) * pmm;  // P_{m+1}^m
    for (int l = order + 2; l <= degree; ++l) {
        const double pl =
            (x * (2.0 * l - 1.0) * p - (l + order - 1.0) * pm1) / (l - order);
        pm1 = p;
        p = pl;
    }
    return p;
}

namespace {

double normalization(int degree, int order) {
    // sqrt((2l+1)/(4 pi) * (l-m)!/(l+m)!) with the factorial ratio built as a
    // running product to avoid overflow.
    double ratio = 1.0;
    for (int k = degree - order + 1; k <= degree + order; ++k)
        ratio /= static_cast<double>(k);
    return std::sqrt((2.0 * degree + 1.0) / (4.0 * kPi) * ratio);
}

} // namespace

double real_sph_harmonic(HarmonicIndex idx, double theta, double phi) {
    if (!idx.valid())
        throw std::domain_error("real_sph_harmonic: invalid (l, m) index");
    if (!(theta >= 0.0 && theta <= kPi))
        throw std::domain_error("real_sph_harmonic: theta must lie in [0, pi]");

    const int m_abs = std::abs(idx.order);
    const double p = assoc_legendre(idx.degree, m_abs, std::cos(theta));
    const double n = normalization(idx.degree, m_abs);
    if (idx.order > 0)
        return std::numbers::sqrt2 * n * p * std::cos(m_abs * phi);
    if (idx.order < 0)
        return std::numbers::sqrt2 * n * p * std::sin(m_abs * phi);
    return n * p;
}

int flat_index(HarmonicIndex idx) {
    if (!idx.valid())
        throw std::domain_error("flat_index: invalid (l, m) index");
    return idx.degree * idx.degree + idx.degree + idx.order + 1;
}

HarmonicIndex unflatten(int t, int max_degree) {
    const int length = (max_degree + 1) * (max_degree + 1);
    if (t < 1 || t > length)
        throw std::out_of_range("unflatten: t=" + std::to_string(t) +
                                " outside 1.." + std::to_string(length));
    const int degree = static_cast<int>(std::sqrt(static_cast<double>(t - 1)));
    const int order = t - 1 - degree * degree - degree;
    return HarmonicIndex{degree, order};
}

Eigen::VectorXd basis_vector(const TruncationSpec& spec, double theta, double phi) {
    Eigen::VectorXd values(spec.length);
    for (int t = 1; t <= spec.length; ++t)
        values[t - 1] = real_sph_harmonic(unflatten(t, spec.max_degree), theta, phi);
    return values;
}

double pattern_eval(const Eigen::VectorXd& coeffs, const TruncationSpec& spec,
                    double theta, double phi) {
    if (coeffs.size() != spec.length)
        throw std::invalid_argument("pattern_eval: coefficient length " +
                                    std::to_string(coeffs.size()) + " != T=" +
                                    std::to_string(spec.length));
    return basis_vector(spec, theta, phi).dot(coeffs);
}

QuadratureRule gauss_legendre(int n) {
    if (n < 1)
        throw std::invalid_argument("gauss_legendre: need n >= 1 nodes");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration on P_n from the Chebyshev-like initial guesses; nodes
    // come in +/- pairs so only the lower half is solved.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) { // center node is exactly zero
        rule.nodes[n / 2] = 0.0;
    }
    return rule;
}

Eigen::MatrixXd gram_matrix(const TruncationSpec& spec, int n_theta, int n_phi) {
    if (n_phi < 1)
        throw std::invalid_argument("gram_matrix: need n_phi >= 1");
    const QuadratureRule rule = gauss_legendre(n_theta);
    const double phi_weight = 2.0 * kPi / n_phi;

    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(spec.length, spec.length);
    for (int i = 0; i < n_theta; ++i) {
        const double theta = std::acos(rule.nodes[i]);
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * kPi * j / n_phi;
            const Eigen::VectorXd y = basis_vector(spec, theta, phi);
            gram.noalias() += (rule.weights[i] * phi_weight) * y * y.transpose();
        }
    }
    return gram;
}

} // namespace era::harmonics
