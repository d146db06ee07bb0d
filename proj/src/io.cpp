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

#include "aircomp/io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "aircomp/datagen.hpp"

namespace aircomp {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

} // namespace

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);

    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }

    RunConfig rc;
    try {
        const auto& sys = j.at("system");
        rc.system.num_sensors = sys.at("sensors").get<int>();
        rc.system.num_antennas = sys.at("antennas").get<int>();
        rc.system.num_subcarriers = sys.at("subcarriers").get<int>();
        rc.system.feature_dim = sys.value("feature_dim", 2 * rc.system.num_subcarriers);
        rc.system.noise_power = dbm_to_milliwatt(sys.at("noise_power_dbm").get<double>());
        rc.system.server_power = dbm_to_milliwatt(sys.at("server_power_dbm").get<double>());
        if (sys.contains("sensor_power_dbm")) {
            rc.system.sensor_power = dbm_to_milliwatt(sys.at("sensor_power_dbm").get<double>());
        }
        if (sys.contains("snr_db")) {
            rc.system.snr = db_to_linear(sys.at("snr_db").get<double>());
        }

        const auto& data = j.at("data");
        const std::string type = data.at("type").get<std::string>();
        if (type == "synthetic") {
            rc.synthetic = true;
            rc.num_classes = data.at("classes").get<int>();
        } else if (type == "external") {
            rc.synthetic = false;
            rc.stats_path = data.at("stats_path").get<std::string>();
        } else {
            throw ParseError("data.type must be 'synthetic' or 'external', got '" + type + "'");
        }

        for (const auto& name : j.at("schemes")) {
            const auto scheme = scheme_from_name(name.get<std::string>());
            if (!scheme) {
                throw ParseError("unknown scheme '" + name.get<std::string>() + "'");
            }
            rc.schemes.push_back(*scheme);
        }
        rc.snr_grid_db = j.at("snr_grid_db").get<std::vector<double>>();
        rc.trials = j.at("trials").get<long>();
        rc.seed = j.at("seed").get<std::uint64_t>();
        rc.out_path = j.value("out_path", rc.out_path);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("config field error: ") + e.what());
    }

    if (rc.schemes.empty()) throw ParseError("schemes must be non-empty");
    if (rc.snr_grid_db.empty()) throw ParseError("snr_grid_db must be non-empty");
    if (rc.trials < 1) throw NonPositiveParameter("trials must be >= 1");
    return rc;
}

ClassStatistics build_stats(const RunConfig& rc) {
    if (rc.synthetic) {
        return make_synthetic_stats(rc.num_classes, rc.system.feature_dim);
    }
    return load_external_stats(rc.stats_path);
}

std::string format_csv(const std::vector<SweepRecord>& records) {
    std::string out = "scheme,snr_db,L,M,U,K,accuracy,dg,trials,seed\n";
    for (const auto& r : records) {
        out += scheme_name(r.scheme);
        out += ',';
        out += format_double(r.snr_db);
        out += ',';
        out += std::to_string(r.num_classes);
        out += ',';
        out += std::to_string(r.num_antennas);
        out += ',';
        out += std::to_string(r.num_sensors);
        out += ',';
        out += std::to_string(r.num_subcarriers);
        out += ',';
        out += format_double(r.accuracy);
        out += ',';
        if (r.dg) out += format_double(*r.dg);
        out += ',';
        out += std::to_string(r.trials);
        out += ',';
        out += std::to_string(r.seed);
        out += '\n';
    }
    return out;
}

} // namespace aircomp
