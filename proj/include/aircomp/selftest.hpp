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

#ifndef AIRCOMP_SELFTEST_HPP
#define AIRCOMP_SELFTEST_HPP

#include <string>

#include "aircomp/model.hpp"
#include "aircomp/precoding.hpp"
#include "aircomp/rng.hpp"

namespace aircomp::selftest {

/// Outcome of one consistency suite. `worst` is normalized so that values
/// <= 1 pass; it is the largest observed violation over all checked
/// quantities relative to the suite's tolerance.
struct SuiteResult {
    std::string name;
    bool passed = false;
    int cases = 0;
    double worst = 0.0;
    std::string detail;
};

/// Small random problem instance used by the suites: dimensions, class
/// statistics, channels, and feasible precoders, all drawn from one stream.
struct RandomInstance {
    SystemConfig cfg; ///< sensor_power resolved
    ClassStatistics stats;
    ChannelSet ch;
    Precoders pc;
};

/// When `equal_pair_variances` is set, the two dimensions of every
/// subcarrier share one variance; the aggregated-moment analysis is exact
/// only under that hypothesis.
RandomInstance random_instance(Rng& rng, int max_sensors = 4, int max_antennas = 4,
                               int max_subcarriers = 4, int max_classes = 4,
                               bool equal_pair_variances = false);

/// Pairwise DG via the precoder-explicit closed form against the
/// definition route through aggregated moments, on random instances with
/// random feasible precoders. Tolerance is relative.
SuiteResult theorem1_identity(int instances, double tol, std::uint64_t seed,
                              int num_threads = 0);

/// Monte Carlo moments of the forwarded features against the analytic
/// aggregated statistics: per-class sample means within `mean_sigmas`
/// standard errors, per-dimension sample variances within `var_rel_tol`.
SuiteResult lemma1_moments(int instances, long draws, double mean_sigmas, double var_rel_tol,
                           std::uint64_t seed, int num_threads = 0);

/// Closed-form receive vectors against random feasible perturbations of the
/// per-subcarrier objective.
SuiteResult receive_oracle(int instances, int perturbations, double tol, std::uint64_t seed);

/// Inner transmit maximization against an independent projected-gradient
/// ascent on the same surrogate, on instances with at most two sensors and
/// two subcarriers.
SuiteResult transmit_oracle(int instances, double tol, std::uint64_t seed);

/// Full alternating runs at the given dimensions: trace monotone within
/// slack, convergence within the round cap, final DG at or above the
/// warm-start baseline, and feasible precoders throughout.
SuiteResult ascent_dominance(const SystemConfig& cfg, const ClassStatistics& stats,
                             int instances, std::uint64_t seed, int num_threads = 0);

} // namespace aircomp::selftest

#endif // AIRCOMP_SELFTEST_HPP
