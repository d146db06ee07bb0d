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

#ifndef AIRCOMP_SIMULATE_HPP
#define AIRCOMP_SIMULATE_HPP

#include <vector>

#include "aircomp/datagen.hpp"
#include "aircomp/model.hpp"
#include "aircomp/precoding.hpp"

namespace aircomp {

struct TrialOutcome {
    int true_class = 0;
    int predicted_class = 0;
    bool correct = false;
};

/// Runs the uplink once: maps each feature pair onto a complex symbol,
/// superimposes the precoded transmissions per subcarrier, adds receiver
/// noise, combines with the receive vectors, and demultiplexes the result
/// back into a length-N real feature vector. Deterministic given the
/// generator state; noise_power of zero disables the noise draw.
Eigen::VectorXd aircomp_forward(const FeatureSample& sample, const ChannelSet& ch,
                                const Precoders& pc, double noise_power, Rng& rng);

/// Nearest class under the variance-normalized squared distance against the
/// aggregated moments. Ties go to the smallest class index.
int mahalanobis_classify(const Eigen::VectorXd& feature, const AggregatedStatistics& agg);

/// Communication-free reference: classifies the arithmetic mean of the
/// per-sensor features against the raw class statistics, with per-dimension
/// variances scaled down by the sensor count.
int ideal_classify(const FeatureSample& sample, const ClassStatistics& stats);

/// Estimates sensing accuracy for one (scheme, SNR) cell by Monte Carlo over
/// channels, features, and noise. Each trial draws a fresh channel set,
/// builds the scheme's precoders, pushes one feature sample through the
/// uplink, and classifies against the trial's aggregated moments. Trials run
/// in parallel across `num_threads` OpenMP workers (0 = library default);
/// results are bit-identical for any thread count because every trial owns a
/// counter-derived generator and the reduction order is fixed.
SweepRecord run_accuracy(const SystemConfig& cfg, const ClassStatistics& stats, Scheme scheme,
                         double snr, long trials, std::uint64_t seed, int num_threads = 0);

/// Serial reference implementation of run_accuracy: same per-trial
/// computation, plain loop. Kept for equivalence testing and benchmarking
/// against the parallel path.
SweepRecord run_accuracy_serial(const SystemConfig& cfg, const ClassStatistics& stats,
                                Scheme scheme, double snr, long trials, std::uint64_t seed);

/// Cross product of schemes and SNR grid points (given in dB), one
/// run_accuracy cell each. Cell seeds are derived from the master seed and
/// the grid position only, so schemes share channel, feature, and noise
/// draws and can be compared as paired samples.
std::vector<SweepRecord> run_sweep(const SystemConfig& cfg, const ClassStatistics& stats,
                                   const std::vector<Scheme>& schemes,
                                   const std::vector<double>& snr_grid_db, long trials,
                                   std::uint64_t seed, int num_threads = 0);

} // namespace aircomp

#endif // AIRCOMP_SIMULATE_HPP
