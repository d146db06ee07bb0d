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

#ifndef AIRCOMP_MODEL_HPP
#define AIRCOMP_MODEL_HPP

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace aircomp {

using cxd = std::complex<double>;

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct NonPositiveParameter : Error { using Error::Error; };
struct IndivisibleBlock : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct ClassOutOfRange : Error { using Error::Error; };
struct DegeneratePair : Error { using Error::Error; };
struct ZeroVariance : Error { using Error::Error; };
struct ZeroDenominator : Error { using Error::Error; };
struct DegenerateChannel : Error { using Error::Error; };

// Relative slack absorbed by the power-feasibility checks; optimizer outputs
// may sit on the constraint boundary up to floating-point rounding.
inline constexpr double kPowerSlack = 1e-9;

// ---------------------------------------------------------------------------
// Unit conversions. All powers are stored internally in linear milliwatts;
// dBm and dB appear only at the CLI boundary.

double dbm_to_milliwatt(double dbm);
double milliwatt_to_dbm(double mw);
double db_to_linear(double db);
double linear_to_db(double lin);

// ---------------------------------------------------------------------------
// Domain types

/// Static description of the sensing network: sensor count, server antenna
/// count, subcarrier count, feature dimensionality, and the power/noise
/// budget. Immutable after construction and validation.
struct SystemConfig {
    int num_sensors = 0;     ///< distributed single-antenna sensors
    int num_antennas = 0;    ///< server receive antennas
    int num_subcarriers = 0; ///< uplink subcarriers; each carries one complex symbol
    int feature_dim = 0;     ///< local feature dimension, must equal 2 * num_subcarriers

    double noise_power = 0.0;  ///< receiver noise power per antenna, linear mW
    double server_power = 0.0; ///< receive combiner budget per subcarrier, linear mW

    /// Analytical equivalent SNR (linear ratio). Exactly one of snr or
    /// sensor_power is usually supplied; the other is derived.
    std::optional<double> snr;
    /// Per-sensor transmit budget, linear mW, uniform across sensors.
    std::optional<double> sensor_power;
};

/// Per-class first and second moments of the local feature distribution,
/// plus per-subcarrier quantities derived from them. The feature covariance
/// is diagonal; `variances` holds its diagonal.
struct ClassStatistics {
    int num_classes = 0; ///< L
    int dim = 0;         ///< N, matches SystemConfig::feature_dim

    Eigen::MatrixXd centroids; ///< num_classes x dim
    Eigen::VectorXd variances; ///< dim

    // Derived per-subcarrier quantities (subcarrier k serves dimensions
    // 2k and 2k+1, zero-based). Populated by derive_symbol_moments().
    Eigen::VectorXd pair_variance; ///< average variance of each dimension pair
    Eigen::VectorXd symbol_power;  ///< second moment of the complex symbol per subcarrier
    double max_symbol_power = 0.0; ///< max over subcarriers of symbol_power

    bool derived() const { return pair_variance.size() == dim / 2; }
};

/// Complex uplink channel vectors, one length-M vector per (sensor, subcarrier).
struct ChannelSet {
    int num_sensors = 0;
    int num_subcarriers = 0;
    int num_antennas = 0;
    std::vector<Eigen::VectorXcd> gains; ///< num_sensors * num_subcarriers entries

    const Eigen::VectorXcd& at(int u, int k) const { return gains[static_cast<size_t>(u) * num_subcarriers + k]; }
    Eigen::VectorXcd& at(int u, int k) { return gains[static_cast<size_t>(u) * num_subcarriers + k]; }
};

/// Transmit scalars (one per sensor and subcarrier) and receive combining
/// vectors (one per subcarrier).
struct Precoders {
    Eigen::MatrixXcd tx;             ///< num_sensors x num_subcarriers
    std::vector<Eigen::VectorXcd> rx; ///< num_subcarriers entries, each length num_antennas
};

/// Moments of the aggregated feature vector after over-the-air combining:
/// per-class centroids and the per-subcarrier variance shared by the two
/// demultiplexed dimensions of each subcarrier.
struct AggregatedStatistics {
    Eigen::MatrixXd centroids;     ///< num_classes x dim
    Eigen::VectorXd pair_variance; ///< num_subcarriers
};

enum class Scheme { kProposed, kPatMc, kIdeal };

const char* scheme_name(Scheme s);
std::optional<Scheme> scheme_from_name(std::string_view name);

/// One result row of an accuracy sweep.
struct SweepRecord {
    Scheme scheme = Scheme::kProposed;
    double snr = 0.0;    ///< linear ratio
    double snr_db = 0.0; ///< same value in dB, kept verbatim for reporting
    int num_classes = 0;
    int num_antennas = 0;
    int num_sensors = 0;
    int num_subcarriers = 0;
    double accuracy = 0.0;
    std::optional<double> dg; ///< mean overall discriminant gain; absent for the ideal scheme
    long trials = 0;
    unsigned long long seed = 0;
};

// ---------------------------------------------------------------------------
// Operations

/// Fills the derived per-subcarrier fields of `stats`. Requires an even
/// feature dimension and positive variances.
void derive_symbol_moments(ClassStatistics& stats);

/// Checks every structural invariant of the configuration pair and populates
/// the derived statistics fields. Throws DimensionMismatch or
/// NonPositiveParameter with a message naming the violated invariant.
void validate_config(const SystemConfig& cfg, ClassStatistics& stats);

/// Converts an analytical equivalent SNR (linear) into the per-sensor
/// transmit budget that realizes it:
///   sensor_power = snr * K * noise_power / (max_symbol_power * U).
double snr_to_sensor_power(const SystemConfig& cfg, const ClassStatistics& stats, double snr);

/// Returns a copy of `cfg` whose sensor_power is resolved from `snr`.
SystemConfig resolve_sensor_power(const SystemConfig& cfg, const ClassStatistics& stats, double snr);

/// True iff the per-sensor transmit power and the per-subcarrier receive
/// power both stay within their budgets up to the relative slack.
bool power_feasible(const Precoders& pc, double sensor_power, double server_power,
                    double slack = kPowerSlack);

} // namespace aircomp

#endif // AIRCOMP_MODEL_HPP
