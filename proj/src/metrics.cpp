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

#include "aircomp/metrics.hpp"

#include <cmath>

namespace aircomp {

PairwiseSeparation::PairwiseSeparation(int num_classes, int num_subcarriers)
    : num_classes_(num_classes),
      num_subcarriers_(num_subcarriers),
      psi_(static_cast<size_t>(num_classes) * num_classes * num_subcarriers, 0.0),
      delta_d_(static_cast<size_t>(num_classes) * num_classes * num_subcarriers, cxd{0.0, 0.0}),
      pair_weight_(Eigen::VectorXd::Zero(num_subcarriers)) {}

PairwiseSeparation compute_separation(const ClassStatistics& stats) {
    const int L = stats.num_classes;
    const int K = stats.dim / 2;
    PairwiseSeparation sep(L, K);
    for (int l = 0; l < L; ++l) {
        for (int lp = 0; lp < L; ++lp) {
            for (int k = 0; k < K; ++k) {
                const double d_re = stats.centroids(l, 2 * k) - stats.centroids(lp, 2 * k);
                const double d_im = stats.centroids(l, 2 * k + 1) - stats.centroids(lp, 2 * k + 1);
                sep.psi_[sep.index(l, lp, k)] = d_re * d_re + d_im * d_im;
                sep.delta_d_[sep.index(l, lp, k)] = cxd{d_re, d_im};
            }
        }
    }
    for (int k = 0; k < K; ++k) {
        double weight = 0.0;
        for (int lp = 0; lp < L; ++lp) {
            for (int l = 0; l < lp; ++l) weight += sep.psi(l, lp, k);
        }
        sep.pair_weight_(k) = weight;
    }
    return sep;
}

AggregatedStatistics aggregate_statistics(const ClassStatistics& stats, const ChannelSet& ch,
                                          const Precoders& pc, double noise_power) {
    const int L = stats.num_classes;
    const int K = ch.num_subcarriers;
    const int U = ch.num_sensors;
    if (stats.dim != 2 * K) throw DimensionMismatch("statistics dim does not match 2*K");
    if (pc.tx.rows() != U || pc.tx.cols() != K || static_cast<int>(pc.rx.size()) != K) {
        throw DimensionMismatch("precoder shape does not match channel set");
    }

    AggregatedStatistics agg;
    agg.centroids = Eigen::MatrixXd::Zero(L, stats.dim);
    agg.pair_variance.resize(K);

    for (int k = 0; k < K; ++k) {
        const Eigen::VectorXcd& w = pc.rx[k];
        double gain_energy = 0.0;
        for (int u = 0; u < U; ++u) {
            const cxd eff_gain = w.dot(ch.at(u, k)) * pc.tx(u, k);
            const double a = eff_gain.real();
            const double b = eff_gain.imag();
            gain_energy += std::norm(eff_gain);
            for (int l = 0; l < L; ++l) {
                const double mu_re = stats.centroids(l, 2 * k);
                const double mu_im = stats.centroids(l, 2 * k + 1);
                agg.centroids(l, 2 * k) += a * mu_re - b * mu_im;
                agg.centroids(l, 2 * k + 1) += a * mu_im + b * mu_re;
            }
        }
        agg.pair_variance(k) =
            stats.pair_variance(k) * gain_energy + 0.5 * noise_power * w.squaredNorm();
    }
    return agg;
}

double symmetric_kl_gaussian(double mu1, double mu2, double var) {
    if (!(var > 0.0)) throw NonPositiveParameter("variance must be > 0");
    const double gap = mu1 - mu2;
    return gap * gap / var;
}

double pairwise_dg_definition(const AggregatedStatistics& agg, int l, int lp) {
    if (l == lp) throw DegeneratePair("class pair indices must differ");
    const int K = static_cast<int>(agg.pair_variance.size());
    for (int k = 0; k < K; ++k) {
        if (!(agg.pair_variance(k) > 0.0)) {
            throw ZeroVariance("aggregated variance of subcarrier " + std::to_string(k) +
                               " is not positive");
        }
    }
    double dg = 0.0;
    for (int k = 0; k < K; ++k) {
        const double var = agg.pair_variance(k);
        dg += symmetric_kl_gaussian(agg.centroids(l, 2 * k), agg.centroids(lp, 2 * k), var);
        dg += symmetric_kl_gaussian(agg.centroids(l, 2 * k + 1), agg.centroids(lp, 2 * k + 1), var);
    }
    return dg;
}

namespace {

// Shared by the closed form and overall_dg: per-subcarrier coherent sum of
// effective gains, their energy, and the variance denominator.
struct SubcarrierGains {
    Eigen::VectorXcd coherent;    // sum over sensors of rx^H h tx
    Eigen::VectorXd energy;       // sum over sensors of |rx^H h tx|^2
    Eigen::VectorXd denominator;  // pair_variance * energy + noise/2 * ||rx||^2
};

SubcarrierGains subcarrier_gains(const ClassStatistics& stats, const ChannelSet& ch,
                                 const Precoders& pc, double noise_power) {
    const int K = ch.num_subcarriers;
    const int U = ch.num_sensors;
    SubcarrierGains g;
    g.coherent.resize(K);
    g.energy.resize(K);
    g.denominator.resize(K);
    for (int k = 0; k < K; ++k) {
        const Eigen::VectorXcd& w = pc.rx[k];
        const double rx_norm2 = w.squaredNorm();
        if (!(rx_norm2 > 0.0)) {
            throw ZeroDenominator("receive vector of subcarrier " + std::to_string(k) +
                                  " is zero");
        }
        cxd coherent{0.0, 0.0};
        double energy = 0.0;
        for (int u = 0; u < U; ++u) {
            const cxd eff_gain = w.dot(ch.at(u, k)) * pc.tx(u, k);
            coherent += eff_gain;
            energy += std::norm(eff_gain);
        }
        g.coherent(k) = coherent;
        g.energy(k) = energy;
        g.denominator(k) = stats.pair_variance(k) * energy + 0.5 * noise_power * rx_norm2;
    }
    return g;
}

} // namespace

double pairwise_dg_closedform(const ClassStatistics& stats, const ChannelSet& ch,
                              const Precoders& pc, double noise_power, int l, int lp) {
    if (l == lp) throw DegeneratePair("class pair indices must differ");
    const auto gains = subcarrier_gains(stats, ch, pc, noise_power);
    const int K = ch.num_subcarriers;
    double dg = 0.0;
    for (int k = 0; k < K; ++k) {
        const double d_re = stats.centroids(l, 2 * k) - stats.centroids(lp, 2 * k);
        const double d_im = stats.centroids(l, 2 * k + 1) - stats.centroids(lp, 2 * k + 1);
        const double psi = d_re * d_re + d_im * d_im;
        dg += std::norm(gains.coherent(k)) * psi / gains.denominator(k);
    }
    return dg;
}

double overall_dg(const ClassStatistics& stats, const ChannelSet& ch, const Precoders& pc,
                  double noise_power) {
    const int L = stats.num_classes;
    const auto gains = subcarrier_gains(stats, ch, pc, noise_power);
    const auto sep = compute_separation(stats);
    const int K = ch.num_subcarriers;
    double total = 0.0;
    for (int k = 0; k < K; ++k) {
        total += std::norm(gains.coherent(k)) * sep.pair_weight()(k) / gains.denominator(k);
    }
    return 2.0 * total / (static_cast<double>(L) * (L - 1));
}

} // namespace aircomp
