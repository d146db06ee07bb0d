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

#ifndef AIRCOMP_METRICS_HPP
#define AIRCOMP_METRICS_HPP

#include "aircomp/model.hpp"

namespace aircomp {

/// Squared centroid gaps of every class pair, resolved per subcarrier:
/// psi(l, l', k) is the squared Euclidean gap of the two dimensions carried
/// by subcarrier k, and delta_d(l, l', k) is the same gap folded into one
/// complex number (real part from the even dimension, imaginary from the
/// odd), so psi = |delta_d|^2.
class PairwiseSeparation {
public:
    PairwiseSeparation(int num_classes, int num_subcarriers);

    double psi(int l, int lp, int k) const { return psi_[index(l, lp, k)]; }
    cxd delta_d(int l, int lp, int k) const { return delta_d_[index(l, lp, k)]; }

    /// Sum of psi over unordered class pairs, per subcarrier.
    const Eigen::VectorXd& pair_weight() const { return pair_weight_; }

    int num_classes() const { return num_classes_; }
    int num_subcarriers() const { return num_subcarriers_; }

    friend PairwiseSeparation compute_separation(const ClassStatistics& stats);

private:
    size_t index(int l, int lp, int k) const {
        return (static_cast<size_t>(l) * num_classes_ + lp) * num_subcarriers_ + k;
    }

    int num_classes_ = 0;
    int num_subcarriers_ = 0;
    std::vector<double> psi_;
    std::vector<cxd> delta_d_;
    Eigen::VectorXd pair_weight_;
};

PairwiseSeparation compute_separation(const ClassStatistics& stats);

/// Moments of the aggregated feature under the current channels and
/// precoders. With the per-(sensor, subcarrier) effective gain
/// g = rx_k^H h_{u,k} tx_{u,k}, each aggregated centroid pair is the sum of
/// the complex products g * (mu_even + j mu_odd), and the per-subcarrier
/// variance is pair_variance * sum |g|^2 plus the combined noise
/// (noise_power / 2) * ||rx_k||^2.
AggregatedStatistics aggregate_statistics(const ClassStatistics& stats, const ChannelSet& ch,
                                          const Precoders& pc, double noise_power);

/// Symmetric Kullback-Leibler divergence between two scalar Gaussians with a
/// common variance; collapses to (mu1 - mu2)^2 / var.
double symmetric_kl_gaussian(double mu1, double mu2, double var);

/// Pairwise discriminant gain evaluated from aggregated moments: the sum of
/// per-dimension symmetric KL divergences.
double pairwise_dg_definition(const AggregatedStatistics& agg, int l, int lp);

/// Pairwise discriminant gain evaluated directly from channels and
/// precoders, without forming aggregated moments. Equal to
/// pairwise_dg_definition on the same inputs up to rounding.
double pairwise_dg_closedform(const ClassStatistics& stats, const ChannelSet& ch,
                              const Precoders& pc, double noise_power, int l, int lp);

/// Overall discriminant gain: the average of all unordered pairwise gains.
double overall_dg(const ClassStatistics& stats, const ChannelSet& ch, const Precoders& pc,
                  double noise_power);

} // namespace aircomp

#endif // AIRCOMP_METRICS_HPP
