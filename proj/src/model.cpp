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

#include "aircomp/model.hpp"

#include <cmath>

namespace aircomp {

double dbm_to_milliwatt(double dbm) { return std::pow(10.0, dbm / 10.0); }
double milliwatt_to_dbm(double mw) { return 10.0 * std::log10(mw); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::kProposed: return "proposed";
        case Scheme::kPatMc: return "pat_mc";
        case Scheme::kIdeal: return "ideal";
    }
    return "unknown";
}

std::optional<Scheme> scheme_from_name(std::string_view name) {
    if (name == "proposed") return Scheme::kProposed;
    if (name == "pat_mc") return Scheme::kPatMc;
    if (name == "ideal") return Scheme::kIdeal;
    return std::nullopt;
}

void derive_symbol_moments(ClassStatistics& stats) {
    if (stats.dim % 2 != 0) {
        throw DimensionMismatch("feature dimension must be even, got " + std::to_string(stats.dim));
    }
    if (stats.centroids.rows() != stats.num_classes || stats.centroids.cols() != stats.dim) {
        throw DimensionMismatch("centroid matrix shape does not match (num_classes, dim)");
    }
    if (stats.variances.size() != stats.dim) {
        throw DimensionMismatch("variance vector length does not match dim");
    }

    const int num_subcarriers = stats.dim / 2;
    const int L = stats.num_classes;
    stats.pair_variance.resize(num_subcarriers);
    stats.symbol_power.resize(num_subcarriers);
    for (int k = 0; k < num_subcarriers; ++k) {
        const double var_re = stats.variances(2 * k);
        const double var_im = stats.variances(2 * k + 1);
        stats.pair_variance(k) = 0.5 * (var_re + var_im);

        double centroid_energy = 0.0;
        for (int l = 0; l < L; ++l) {
            const double mu_re = stats.centroids(l, 2 * k);
            const double mu_im = stats.centroids(l, 2 * k + 1);
            centroid_energy += mu_re * mu_re + mu_im * mu_im;
        }
        stats.symbol_power(k) = var_re + var_im + centroid_energy / static_cast<double>(L);
    }
    stats.max_symbol_power = stats.symbol_power.maxCoeff();
}

void validate_config(const SystemConfig& cfg, ClassStatistics& stats) {
    if (cfg.num_sensors < 1) throw NonPositiveParameter("num_sensors must be >= 1");
    if (cfg.num_antennas < 1) throw NonPositiveParameter("num_antennas must be >= 1");
    if (cfg.num_subcarriers < 1) throw NonPositiveParameter("num_subcarriers must be >= 1");
    if (cfg.feature_dim != 2 * cfg.num_subcarriers) {
        throw DimensionMismatch("feature_dim must equal 2 * num_subcarriers (got " +
                                std::to_string(cfg.feature_dim) + " vs 2*" +
                                std::to_string(cfg.num_subcarriers) + ")");
    }
    if (!(cfg.noise_power > 0.0)) throw NonPositiveParameter("noise_power must be > 0");
    if (!(cfg.server_power > 0.0)) throw NonPositiveParameter("server_power must be > 0");
    if (cfg.snr && !(*cfg.snr > 0.0)) throw NonPositiveParameter("snr must be > 0");
    if (cfg.sensor_power && !(*cfg.sensor_power > 0.0)) {
        throw NonPositiveParameter("sensor_power must be > 0");
    }

    if (stats.num_classes < 2) throw NonPositiveParameter("num_classes must be >= 2");
    if (stats.dim != cfg.feature_dim) {
        throw DimensionMismatch("statistics dim " + std::to_string(stats.dim) +
                                " does not match feature_dim " + std::to_string(cfg.feature_dim));
    }
    for (int n = 0; n < stats.dim; ++n) {
        if (!(stats.variances(n) > 0.0)) {
            throw NonPositiveParameter("variance of dimension " + std::to_string(n) +
                                       " must be > 0");
        }
    }
    derive_symbol_moments(stats);
}

double snr_to_sensor_power(const SystemConfig& cfg, const ClassStatistics& stats, double snr) {
    if (!(snr > 0.0)) throw NonPositiveParameter("snr must be > 0");
    if (!stats.derived()) {
        throw NonPositiveParameter("class statistics missing derived symbol moments");
    }
    return snr * cfg.num_subcarriers * cfg.noise_power /
           (stats.max_symbol_power * cfg.num_sensors);
}

SystemConfig resolve_sensor_power(const SystemConfig& cfg, const ClassStatistics& stats,
                                  double snr) {
    SystemConfig out = cfg;
    out.snr = snr;
    out.sensor_power = snr_to_sensor_power(cfg, stats, snr);
    return out;
}

bool power_feasible(const Precoders& pc, double sensor_power, double server_power, double slack) {
    for (int u = 0; u < pc.tx.rows(); ++u) {
        if (pc.tx.row(u).squaredNorm() > sensor_power * (1.0 + slack)) return false;
    }
    for (const auto& w : pc.rx) {
        if (w.squaredNorm() > server_power * (1.0 + slack)) return false;
    }
    return true;
}

} // namespace aircomp
