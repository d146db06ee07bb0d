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

// Benchmark comparing the serial reference trial runner against the
// OpenMP-parallel one on a full-size Monte Carlo cell, and checking that
// both produce identical results.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "aircomp/datagen.hpp"
#include "aircomp/simulate.hpp"

using Clock = std::chrono::steady_clock;

static double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int main(int argc, char** argv) {
    long trials = 400;
    if (argc > 1) trials = std::atol(argv[1]);

    aircomp::SystemConfig cfg;
    cfg.num_sensors = 12;
    cfg.num_antennas = 10;
    cfg.num_subcarriers = 10;
    cfg.feature_dim = 20;
    cfg.noise_power = 1000.0;
    cfg.server_power = 1000.0;

    aircomp::ClassStatistics stats = aircomp::make_synthetic_stats(10, 20);
    aircomp::validate_config(cfg, stats);

    const double snr = 10.0;
    const std::uint64_t seed = 20260810;

    std::printf("trial engine benchmark: proposed scheme, %ld trials, "
                "U=%d M=%d K=%d L=%d\n",
                trials, cfg.num_sensors, cfg.num_antennas, cfg.num_subcarriers,
                stats.num_classes);

    auto start = Clock::now();
    const aircomp::SweepRecord reference =
        aircomp::run_accuracy_serial(cfg, stats, aircomp::Scheme::kProposed, snr, trials, seed);
    const double serial_time = seconds_since(start);
    std::printf("%-18s %8.3f s   accuracy %.6f   dg %.6f\n", "serial reference", serial_time,
                reference.accuracy, *reference.dg);

    std::vector<int> thread_counts = {1, 2, 4};
#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
    if (max_threads > 4) thread_counts.push_back(max_threads);
#endif

    bool all_match = true;
    for (int threads : thread_counts) {
        start = Clock::now();
        const aircomp::SweepRecord rec = aircomp::run_accuracy(
            cfg, stats, aircomp::Scheme::kProposed, snr, trials, seed, threads);
        const double elapsed = seconds_since(start);
        const bool match = rec.accuracy == reference.accuracy && *rec.dg == *reference.dg;
        all_match = all_match && match;
        std::printf("openmp %2d threads  %8.3f s   speedup %5.2fx   %s\n", threads, elapsed,
                    serial_time / elapsed, match ? "matches serial" : "MISMATCH");
    }

    if (!all_match) {
        std::fprintf(stderr, "parallel results diverged from the serial reference\n");
        return 1;
    }
    return 0;
}
