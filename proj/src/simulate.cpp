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

#include "aircomp/simulate.hpp"

#include <cmath>
#include <exception>
#include <limits>

#include "aircomp/metrics.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace aircomp {

Eigen::VectorXd aircomp_forward(const FeatureSample& sample, const ChannelSet& ch,
                                const Precoders& pc, double noise_power, Rng& rng) {
    const int K = ch.num_subcarriers;
    const int U = ch.num_sensors;
    const int M = ch.num_antennas;
    if (sample.features.rows() != U || sample.features.cols() != 2 * K) {
        throw DimensionMismatch("feature sample shape does not match channel set");
    }
    if (pc.tx.rows() != U || pc.tx.cols() != K || static_cast<int>(pc.rx.size()) != K) {
        throw DimensionMismatch("precoder shape does not match channel set");
    }

    const double noise_amp = std::sqrt(noise_power);
    Eigen::VectorXd aggregated(2 * K);
    for (int k = 0; k < K; ++k) {
        const Eigen::VectorXcd& w = pc.rx[k];
        cxd symbol{0.0, 0.0};
        for (int u = 0; u < U; ++u) {
            const cxd s{sample.features(u, 2 * k), sample.features(u, 2 * k + 1)};
            symbol += w.dot(ch.at(u, k)) * pc.tx(u, k) * s;
        }
        if (noise_power > 0.0) {
            cxd combined_noise{0.0, 0.0};
            for (int m = 0; m < M; ++m) {
                combined_noise += std::conj(w(m)) * (noise_amp * rng.cnormal());
            }
            symbol += combined_noise;
        }
        aggregated(2 * k) = symbol.real();
        aggregated(2 * k + 1) = symbol.imag();
    }
    return aggregated;
}

int mahalanobis_classify(const Eigen::VectorXd& feature, const AggregatedStatistics& agg) {
    const int L = static_cast<int>(agg.centroids.rows());
    const int K = static_cast<int>(agg.pair_variance.size());
    for (int k = 0; k < K; ++k) {
        if (!(agg.pair_variance(k) > 0.0)) {
            throw ZeroVariance("aggregated variance of subcarrier " + std::to_string(k) +
                               " is not positive");
        }
    }
    int best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int l = 0; l < L; ++l) {
        double dist = 0.0;
        for (int k = 0; k < K; ++k) {
            const double d_re = feature(2 * k) - agg.centroids(l, 2 * k);
            const double d_im = feature(2 * k + 1) - agg.centroids(l, 2 * k + 1);
            dist += (d_re * d_re + d_im * d_im) / agg.pair_variance(k);
        }
        if (dist < best_dist) {
            best_dist = dist;
            best = l;
        }
    }
    return best;
}

int ideal_classify(const FeatureSample& sample, const ClassStatistics& stats) {
    const int U = static_cast<int>(sample.features.rows());
    const Eigen::VectorXd mean = sample.features.colwise().mean();
    int best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int l = 0; l < stats.num_classes; ++l) {
        double dist = 0.0;
        for (int n = 0; n < stats.dim; ++n) {
            const double gap = mean(n) - stats.centroids(l, n);
            dist += gap * gap / (stats.variances(n) / U);
        }
        if (dist < best_dist) {
            best_dist = dist;
            best = l;
        }
    }
    return best;
}

namespace {

struct TrialResult {
    TrialOutcome outcome;
    double dg = 0.0;
};

TrialOutcome make_outcome(int true_class, int predicted_class) {
    return {true_class, predicted_class, true_class == predicted_class};
}

// One Monte Carlo trial. Streams are split per purpose so that schemes
// consuming different subsets (ideal draws no channel or noise) still see
// identical features.
TrialResult run_trial(const SystemConfig& cfg, const ClassStatistics& stats, Scheme scheme,
                      std::uint64_t trial_seed) {
    Rng feature_rng(derive_seed(trial_seed, kFeatureStream));
    const int true_class = feature_rng.below(stats.num_classes);
    const FeatureSample sample =
        sample_features(stats, cfg.num_sensors, true_class, feature_rng);

    TrialResult result;
    if (scheme == Scheme::kIdeal) {
        result.outcome = make_outcome(true_class, ideal_classify(sample, stats));
        return result;
    }

    Rng channel_rng(derive_seed(trial_seed, kChannelStream));
    const ChannelSet ch = sample_channels(cfg, channel_rng);

    Precoders pc = pat_mc_precoders(cfg, ch);
    if (scheme == Scheme::kProposed) {
        OptimizerReport report = alternating_optimize(cfg, stats, ch, pc);
        pc = std::move(report.final_pc);
        result.dg = report.dg_trace.back();
    } else {
        result.dg = overall_dg(stats, ch, pc, cfg.noise_power);
    }

    const AggregatedStatistics agg = aggregate_statistics(stats, ch, pc, cfg.noise_power);
    Rng noise_rng(derive_seed(trial_seed, kNoiseStream));
    const Eigen::VectorXd aggregated = aircomp_forward(sample, ch, pc, cfg.noise_power, noise_rng);
    result.outcome = make_outcome(true_class, mahalanobis_classify(aggregated, agg));
    return result;
}

SweepRecord reduce_trials(const SystemConfig& cfg, const ClassStatistics& stats, Scheme scheme,
                          double snr, long trials, std::uint64_t seed,
                          const std::vector<TrialResult>& results) {
    SweepRecord rec;
    rec.scheme = scheme;
    rec.snr = snr;
    rec.snr_db = linear_to_db(snr);
    rec.num_classes = stats.num_classes;
    rec.num_antennas = cfg.num_antennas;
    rec.num_sensors = cfg.num_sensors;
    rec.num_subcarriers = cfg.num_subcarriers;
    rec.trials = trials;
    rec.seed = seed;

    long correct = 0;
    double dg_sum = 0.0; // summed in trial order, independent of thread count
    for (const auto& r : results) {
        correct += r.outcome.correct ? 1 : 0;
        dg_sum += r.dg;
    }
    rec.accuracy = static_cast<double>(correct) / static_cast<double>(trials);
    if (scheme != Scheme::kIdeal) rec.dg = dg_sum / static_cast<double>(trials);
    return rec;
}

} // namespace

SweepRecord run_accuracy(const SystemConfig& cfg, const ClassStatistics& stats, Scheme scheme,
                         double snr, long trials, std::uint64_t seed, int num_threads) {
    if (trials < 1) throw NonPositiveParameter("trials must be >= 1");
    const SystemConfig resolved = resolve_sensor_power(cfg, stats, snr);

    std::vector<TrialResult> results(trials);
    std::exception_ptr failure = nullptr;

#ifdef _OPENMP
    const int workers = num_threads > 0 ? num_threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 8) num_threads(workers)
    for (long t = 0; t < trials; ++t) {
        try {
            results[t] = run_trial(resolved, stats, scheme, derive_seed(seed, t));
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
#else
    (void)num_threads;
    for (long t = 0; t < trials; ++t) {
        results[t] = run_trial(resolved, stats, scheme, derive_seed(seed, t));
    }
#endif
    if (failure) std::rethrow_exception(failure);
    return reduce_trials(cfg, stats, scheme, snr, trials, seed, results);
}

SweepRecord run_accuracy_serial(const SystemConfig& cfg, const ClassStatistics& stats,
                                Scheme scheme, double snr, long trials, std::uint64_t seed) {
    if (trials < 1) throw NonPositiveParameter("trials must be >= 1");
    const SystemConfig resolved = resolve_sensor_power(cfg, stats, snr);

    std::vector<TrialResult> results(trials);
    for (long t = 0; t < trials; ++t) {
        results[t] = run_trial(resolved, stats, scheme, derive_seed(seed, t));
    }
    return reduce_trials(cfg, stats, scheme, snr, trials, seed, results);
}

std::vector<SweepRecord> run_sweep(const SystemConfig& cfg, const ClassStatistics& stats,
                                   const std::vector<Scheme>& schemes,
                                   const std::vector<double>& snr_grid_db, long trials,
                                   std::uint64_t seed, int num_threads) {
    if (schemes.empty() || snr_grid_db.empty()) {
        throw NonPositiveParameter("schemes and SNR grid must be non-empty");
    }
    std::vector<SweepRecord> records;
    records.reserve(schemes.size() * snr_grid_db.size());
    for (const Scheme scheme : schemes) {
        for (size_t i = 0; i < snr_grid_db.size(); ++i) {
            // Cell seed depends on the grid position only: schemes share
            // random draws and pair up for comparison.
            const std::uint64_t cell_seed = derive_seed(seed, 0x9d5 + i);
            SweepRecord rec = run_accuracy(cfg, stats, scheme, db_to_linear(snr_grid_db[i]),
                                           trials, cell_seed, num_threads);
            rec.snr_db = snr_grid_db[i]; // keep the grid value verbatim for reporting
            records.push_back(std::move(rec));
        }
    }
    return records;
}

} // namespace aircomp
