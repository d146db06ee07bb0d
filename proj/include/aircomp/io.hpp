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

#ifndef AIRCOMP_IO_HPP
#define AIRCOMP_IO_HPP

#include <string>
#include <vector>

#include "aircomp/model.hpp"

namespace aircomp {

/// Parsed experiment configuration. Powers arrive in dBm and are converted
/// to linear milliwatts exactly once, here.
struct RunConfig {
    SystemConfig system;
    bool synthetic = true;
    int num_classes = 0;    ///< synthetic data only
    std::string stats_path; ///< external data only
    std::vector<Scheme> schemes;
    std::vector<double> snr_grid_db;
    long trials = 1;
    std::uint64_t seed = 0;
    std::string out_path = "sweep.csv";
};

/// Loads and structurally validates a JSON run configuration. Throws
/// ParseError on malformed input and the validation error types on bad
/// values.
RunConfig load_run_config(const std::string& path);

/// Materializes the configured class statistics (synthetic block centroids
/// or an external stats file) with derived fields populated.
ClassStatistics build_stats(const RunConfig& rc);

/// Renders sweep records as CSV with a fixed header and field order;
/// floating-point fields carry 10 significant digits. The dg field is empty
/// for the ideal scheme.
std::string format_csv(const std::vector<SweepRecord>& records);

} // namespace aircomp

#endif // AIRCOMP_IO_HPP
