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

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "aircomp/datagen.hpp"
#include "aircomp/io.hpp"

using Catch::Approx;
using namespace aircomp;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents, const std::string& ext = ".json") {
        static int counter = 0;
        path = "io_test_" + std::to_string(counter++) + ext;
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

const char* kReferenceConfig = R"({
  "system": {
    "sensors": 12, "antennas": 10, "subcarriers": 10,
    "noise_power_dbm": 30.0, "server_power_dbm": 30.0
  },
  "data": {"type": "synthetic", "classes": 10},
  "schemes": ["proposed", "pat_mc", "ideal"],
  "snr_grid_db": [-10, -5, 0, 5, 10, 15, 20, 25],
  "trials": 2000,
  "seed": 1,
  "out_path": "sweep.csv"
})";

} // namespace

TEST_CASE("run configuration parses with dBm conversion at the boundary") {
    TempFile file(kReferenceConfig);
    const RunConfig rc = load_run_config(file.path);
    REQUIRE(rc.system.num_sensors == 12);
    REQUIRE(rc.system.num_antennas == 10);
    REQUIRE(rc.system.num_subcarriers == 10);
    REQUIRE(rc.system.feature_dim == 20); // defaulted to 2K
    REQUIRE(rc.system.noise_power == Approx(1000.0).epsilon(1e-12));
    REQUIRE(rc.system.server_power == Approx(1000.0).epsilon(1e-12));
    REQUIRE(rc.synthetic);
    REQUIRE(rc.num_classes == 10);
    REQUIRE(rc.schemes.size() == 3);
    REQUIRE(rc.snr_grid_db.size() == 8);
    REQUIRE(rc.trials == 2000);
    REQUIRE(rc.seed == 1);
    REQUIRE(rc.out_path == "sweep.csv");

    ClassStatistics stats = build_stats(rc);
    REQUIRE_NOTHROW(validate_config(rc.system, stats));
}

TEST_CASE("malformed configurations are rejected") {
    TempFile not_json("{ nope", ".json");
    REQUIRE_THROWS_AS(load_run_config(not_json.path), ParseError);

    TempFile bad_scheme(R"({
      "system": {"sensors": 2, "antennas": 2, "subcarriers": 2,
                 "noise_power_dbm": 0, "server_power_dbm": 0},
      "data": {"type": "synthetic", "classes": 2},
      "schemes": ["zf"], "snr_grid_db": [0], "trials": 1, "seed": 0
    })");
    REQUIRE_THROWS_AS(load_run_config(bad_scheme.path), ParseError);

    TempFile bad_type(R"({
      "system": {"sensors": 2, "antennas": 2, "subcarriers": 2,
                 "noise_power_dbm": 0, "server_power_dbm": 0},
      "data": {"type": "mystery"},
      "schemes": ["ideal"], "snr_grid_db": [0], "trials": 1, "seed": 0
    })");
    REQUIRE_THROWS_AS(load_run_config(bad_type.path), ParseError);

    TempFile empty_grid(R"({
      "system": {"sensors": 2, "antennas": 2, "subcarriers": 2,
                 "noise_power_dbm": 0, "server_power_dbm": 0},
      "data": {"type": "synthetic", "classes": 2},
      "schemes": ["ideal"], "snr_grid_db": [], "trials": 1, "seed": 0
    })");
    REQUIRE_THROWS_AS(load_run_config(empty_grid.path), ParseError);

    REQUIRE_THROWS_AS(load_run_config("does_not_exist.json"), ParseError);
}

TEST_CASE("a feature dimension clash surfaces at validation") {
    TempFile file(R"({
      "system": {"sensors": 2, "antennas": 2, "subcarriers": 10, "feature_dim": 19,
                 "noise_power_dbm": 0, "server_power_dbm": 0},
      "data": {"type": "synthetic", "classes": 2},
      "schemes": ["ideal"], "snr_grid_db": [0], "trials": 1, "seed": 0
    })");
    const RunConfig rc = load_run_config(file.path);
    REQUIRE_THROWS_AS(
        [&] {
            ClassStatistics stats = make_synthetic_stats(2, 20);
            validate_config(rc.system, stats);
        }(),
        DimensionMismatch);
}

TEST_CASE("external data configurations load stats from file") {
    TempFile stats_file("2,4\n-1,-1,1,1\n1,1,-1,-1\n3,3,3,3\n", ".csv");
    TempFile config(std::string(R"({
      "system": {"sensors": 2, "antennas": 2, "subcarriers": 2,
                 "noise_power_dbm": 0, "server_power_dbm": 0},
      "data": {"type": "external", "stats_path": ")") +
                    stats_file.path + R"("},
      "schemes": ["ideal"], "snr_grid_db": [0], "trials": 1, "seed": 0
    })");
    const RunConfig rc = load_run_config(config.path);
    REQUIRE_FALSE(rc.synthetic);
    const ClassStatistics stats = build_stats(rc);
    REQUIRE(stats.num_classes == 2);
    REQUIRE(stats.centroids(0, 0) == -1.0);
}

TEST_CASE("CSV output has a stable schema") {
    SweepRecord uplink;
    uplink.scheme = Scheme::kProposed;
    uplink.snr = 10.0;
    uplink.snr_db = 10.0;
    uplink.num_classes = 10;
    uplink.num_antennas = 16;
    uplink.num_sensors = 12;
    uplink.num_subcarriers = 10;
    uplink.accuracy = 0.123456789012345;
    uplink.dg = 98.7654321098765;
    uplink.trials = 2000;
    uplink.seed = 42;

    SweepRecord ideal = uplink;
    ideal.scheme = Scheme::kIdeal;
    ideal.dg.reset();
    ideal.accuracy = 1.0;

    const std::string csv = format_csv({uplink, ideal});
    REQUIRE(csv ==
            "scheme,snr_db,L,M,U,K,accuracy,dg,trials,seed\n"
            "proposed,10,10,16,12,10,0.123456789,98.76543211,2000,42\n"
            "ideal,10,10,16,12,10,1,,2000,42\n");
}
