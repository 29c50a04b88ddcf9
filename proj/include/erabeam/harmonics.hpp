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

#ifndef ERABEAM_HARMONICS_HPP
#define ERABEAM_HARMONICS_HPP

#include <Eigen/Dense>

namespace era::harmonics {

// Degree/order pair (l, m) with -l <= m <= l.
struct HarmonicIndex {
    int degree = 0;
    int order = 0;

    bool valid() const { return degree >= 0 && order >= -degree && order <= degree; }
};

// Truncation at maximum degree L keeps T = (L+1)^2 = L^2 + 2L + 1 basis functions.
struct TruncationSpec {
    int max_degree = 0;
    int length = 1;

    static TruncationSpec from_degree(int max_degree);
};

// Associated Legendre function P_l^m(x), 0 <= m <= l, |x| <= 1, computed by
// upward recurrence in degree. The Condon-Shortley phase is NOT included, so
// P_l^l(x) >= 0 for x in [-1, 1].
double assoc_legendre(int degree, int order, double x);

// Real spherical harmonic Y_l^m(theta, phi):
//   m > 0:  sqrt(2) N_l^m  P_l^m(cos theta)  cos(m phi)
//   m < 0:  sqrt(2) N_l^|m| P_l^|m|(cos theta) sin(|m| phi)
//   m = 0:  N_l^0 P_l^0(cos theta)
// with N_l^m = sqrt((2l+1)/(4 pi) * (l-m)!/(l+m)!). The set is orthonormal on
// the unit sphere. Periodic in phi; theta must lie in [0, pi].
double real_sph_harmonic(HarmonicIndex idx, double theta, double phi);

// 1-based flat index t = l^2 + l + m + 1 and its inverse. t ranges over 1..T.
int flat_index(HarmonicIndex idx);
HarmonicIndex unflatten(int t, int max_degree);

// All T basis values stacked in flat-index order, evaluated at one direction.
Eigen::VectorXd basis_vector(const TruncationSpec& spec, double theta, double phi);

// Inner product of a coefficient block with the basis at (theta, phi).
// May be negative; callers decide whether that matters.
double pattern_eval(const Eigen::VectorXd& coeffs, const TruncationSpec& spec,
                    double theta, double phi);

// Gauss-Legendre nodes/weights on [-1, 1].
struct QuadratureRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};
QuadratureRule gauss_legendre(int n);

// Gram matrix G_{tt'} = integral of Y_t Y_t' over the sphere, by Gauss-Legendre
// quadrature in cos(theta) crossed with a uniform rule in phi. Exact (up to
// rounding) when n_theta >= max_degree + 1 and n_phi >= 2*max_degree + 1;
// orthonormality means G == I.
Eigen::MatrixXd gram_matrix(const TruncationSpec& spec, int n_theta, int n_phi);

} // namespace era::harmonics

#endif
