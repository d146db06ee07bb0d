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

#ifndef AIRCOMP_DATAGEN_HPP
#define AIRCOMP_DATAGEN_HPP

#include <string>
#include <vector>

#include "aircomp/model.hpp"
#include "aircomp/rng.hpp"

namespace aircomp {

/// Per-sensor local feature vectors observed for one object instance. All
/// rows are conditioned on the same class.
struct FeatureSample {
    int true_class = 0;  ///< zero-based class index
    Eigen::MatrixXd features; ///< num_sensors x dim
};

/// Builds the synthetic Gaussian-mixture statistics: every variance is 3 and
/// centroid l is -1 on its block of dimensions and +1 elsewhere. Dimension n
/// (zero-based) belongs to class ceil((n+1)*L/N) - 1, which reduces to equal
/// contiguous blocks whenever L divides N and rounds the block boundaries
/// otherwise. Throws IndivisibleBlock when L > N, since some class would get
/// an empty block and duplicate another centroid.
ClassStatistics make_synthetic_stats(int num_classes, int dim);

/// Draws one FeatureSample: num_sensors independent draws from the Gaussian
/// of `true_class`. Deterministic given the generator state.
FeatureSample sample_features(const ClassStatistics& stats, int num_sensors, int true_class,
                              Rng& rng);

/// Draws i.i.d. Rayleigh-fading channels: every entry of every per-(sensor,
/// subcarrier) vector is complex normal with zero mean and unit variance.
ChannelSet sample_channels(const SystemConfig& cfg, Rng& rng);

/// Reads class statistics from a CSV file. Line 1 is `L,N`; the next L lines
/// are centroid rows of N values; the final line holds the N variances.
ClassStatistics load_external_stats(const std::string& path);

/// Reads feature samples from a CSV file whose rows are
/// `class,u,x_1,...,x_N` with one-based class and sensor indices. Rows are
/// grouped into samples of consecutive sensors 1..U sharing a class.
std::vector<FeatureSample> load_external_samples(const std::string& path);

} // namespace aircomp

#endif // AIRCOMP_DATAGEN_HPP
