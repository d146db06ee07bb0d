// SPDX-License-Identifier: Apache-2.0
//
// aircomp-dg: discriminant-gain analysis and precoding for over-the-air
// aggregated multi-sensor edge inference
// Copyright (C) 2026 the aircomp-dg authors
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

// Test-only numeric oracles, independent of the library implementation.

#ifndef AIRCOMP_TESTS_ORACLES_HPP
#define AIRCOMP_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>

namespace testoracle {

inline double gaussian_pdf(double x, double mu, double var) {
    const double d = x - mu;
    return std::exp(-0.5 * d * d / var) / std::sqrt(2.0 * M_PI * var);
}

// Symmetric KL divergence of two equal-variance scalar Gaussians by
// trapezoid quadrature on a wide grid around both means.
inline double symmetric_kl_quadrature(double mu1, double mu2, double var) {
    const double sd = std::sqrt(var);
    const double lo = std::min(mu1, mu2) - 12.0 * sd;
    const double hi = std::max(mu1, mu2) + 12.0 * sd;
    const int points = 200001;
    const double dx = (hi - lo) / (points - 1);
    double total = 0.0;
    for (int i = 0; i < points; ++i) {
        const double x = lo + i * dx;
        const double f1 = gaussian_pdf(x, mu1, var);
        const double f2 = gaussian_pdf(x, mu2, var);
        if (f1 <= 0.0 || f2 <= 0.0) continue;
        const double weight = (i == 0 || i == points - 1) ? 0.5 : 1.0;
        total += weight * (f1 * std::log(f1 / f2) + f2 * std::log(f2 / f1));
    }
    return total * dx;
}

} // namespace testoracle

#endif // AIRCOMP_TESTS_ORACLES_HPP
