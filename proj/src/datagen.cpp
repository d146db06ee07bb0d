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

#include "aircomp/datagen.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace aircomp {

namespace {

// 1-based dimension n belongs to class ceil(n*L/N), computed in integers.
int block_class(int n0, int num_classes, int dim) {
    const long long n = n0 + 1;
    return static_cast<int>((n * num_classes + dim - 1) / dim) - 1;
}

std::vector<double> parse_row(const std::string& line, int line_no) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            size_t pos = 0;
            out.push_back(std::stod(token, &pos));
            while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
            if (pos != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(line_no) + ": bad number '" + token + "'");
        }
    }
    if (!line.empty() && line.back() == ',') {
        throw ParseError("line " + std::to_string(line_no) + ": trailing comma");
    }
    return out;
}

bool read_data_line(std::istream& in, std::string& line, int& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) return true;
    }
    return false;
}

} // namespace

ClassStatistics make_synthetic_stats(int num_classes, int dim) {
    if (num_classes < 2) throw NonPositiveParameter("num_classes must be >= 2");
    if (dim < 2 || dim % 2 != 0) throw DimensionMismatch("dim must be a positive even number");
    if (num_classes > dim) {
        throw IndivisibleBlock("num_classes " + std::to_string(num_classes) +
                               " exceeds dim " + std::to_string(dim) +
                               "; at least one class would get an empty centroid block");
    }

    ClassStatistics stats;
    stats.num_classes = num_classes;
    stats.dim = dim;
    stats.centroids.resize(num_classes, dim);
    for (int l = 0; l < num_classes; ++l) {
        for (int n = 0; n < dim; ++n) {
            stats.centroids(l, n) = (block_class(n, num_classes, dim) == l) ? -1.0 : 1.0;
        }
    }
    stats.variances = Eigen::VectorXd::Constant(dim, 3.0);
    derive_symbol_moments(stats);
    return stats;
}

FeatureSample sample_features(const ClassStatistics& stats, int num_sensors, int true_class,
                              Rng& rng) {
    if (true_class < 0 || true_class >= stats.num_classes) {
        throw ClassOutOfRange("class index " + std::to_string(true_class) + " not in [0, " +
                              std::to_string(stats.num_classes) + ")");
    }
    FeatureSample sample;
    sample.true_class = true_class;
    sample.features.resize(num_sensors, stats.dim);
    for (int u = 0; u < num_sensors; ++u) {
        for (int n = 0; n < stats.dim; ++n) {
            sample.features(u, n) =
                stats.centroids(true_class, n) + std::sqrt(stats.variances(n)) * rng.normal();
        }
    }
    return sample;
}

ChannelSet sample_channels(const SystemConfig& cfg, Rng& rng) {
    ChannelSet ch;
    ch.num_sensors = cfg.num_sensors;
    ch.num_subcarriers = cfg.num_subcarriers;
    ch.num_antennas = cfg.num_antennas;
    ch.gains.resize(static_cast<size_t>(cfg.num_sensors) * cfg.num_subcarriers);
    for (int u = 0; u < cfg.num_sensors; ++u) {
        for (int k = 0; k < cfg.num_subcarriers; ++k) {
            Eigen::VectorXcd h(cfg.num_antennas);
            for (int m = 0; m < cfg.num_antennas; ++m) h(m) = rng.cnormal();
            ch.at(u, k) = std::move(h);
        }
    }
    return ch;
}

ClassStatistics load_external_stats(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open stats file: " + path);

    std::string line;
    int line_no = 0;
    if (!read_data_line(in, line, line_no)) throw ParseError("stats file is empty: " + path);
    const auto header = parse_row(line, line_no);
    if (header.size() != 2) throw ParseError("stats header must be 'L,N'");
    const int num_classes = static_cast<int>(header[0]);
    const int dim = static_cast<int>(header[1]);
    if (num_classes < 2) throw NonPositiveParameter("stats file: L must be >= 2");
    if (dim < 2 || dim % 2 != 0) throw DimensionMismatch("stats file: N must be even and >= 2");

    ClassStatistics stats;
    stats.num_classes = num_classes;
    stats.dim = dim;
    stats.centroids.resize(num_classes, dim);
    for (int l = 0; l < num_classes; ++l) {
        if (!read_data_line(in, line, line_no)) {
            throw ParseError("stats file truncated: expected " + std::to_string(num_classes) +
                             " centroid rows");
        }
        const auto row = parse_row(line, line_no);
        if (static_cast<int>(row.size()) != dim) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(dim) + " values, got " + std::to_string(row.size()));
        }
        for (int n = 0; n < dim; ++n) stats.centroids(l, n) = row[n];
    }
    if (!read_data_line(in, line, line_no)) throw ParseError("stats file missing variance row");
    const auto vars = parse_row(line, line_no);
    if (static_cast<int>(vars.size()) != dim) {
        throw ParseError("variance row: expected " + std::to_string(dim) + " values, got " +
                         std::to_string(vars.size()));
    }
    stats.variances.resize(dim);
    for (int n = 0; n < dim; ++n) {
        if (!(vars[n] > 0.0)) {
            throw NonPositiveParameter("variance column " + std::to_string(n + 1) +
                                       " must be > 0");
        }
        stats.variances(n) = vars[n];
    }
    derive_symbol_moments(stats);
    return stats;
}

std::vector<FeatureSample> load_external_samples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open samples file: " + path);

    std::vector<FeatureSample> samples;
    std::vector<Eigen::VectorXd> block;
    int block_class_idx = -1;
    int dim = -1;
    int sensors_per_sample = -1;

    auto flush_block = [&](int line_no) {
        if (block.empty()) return;
        if (sensors_per_sample < 0) {
            sensors_per_sample = static_cast<int>(block.size());
        } else if (static_cast<int>(block.size()) != sensors_per_sample) {
            throw ParseError("line " + std::to_string(line_no) + ": sample has " +
                             std::to_string(block.size()) + " sensor rows, expected " +
                             std::to_string(sensors_per_sample));
        }
        FeatureSample s;
        s.true_class = block_class_idx;
        s.features.resize(block.size(), dim);
        for (size_t u = 0; u < block.size(); ++u) s.features.row(u) = block[u];
        samples.push_back(std::move(s));
        block.clear();
    };

    std::string line;
    int line_no = 0;
    while (read_data_line(in, line, line_no)) {
        const auto row = parse_row(line, line_no);
        if (row.size() < 3) {
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected class,u,x_1,...,x_N");
        }
        const int cls = static_cast<int>(row[0]) - 1;
        const int sensor = static_cast<int>(row[1]);
        if (cls < 0) throw ParseError("line " + std::to_string(line_no) + ": class must be >= 1");
        const int row_dim = static_cast<int>(row.size()) - 2;
        if (dim < 0) dim = row_dim;
        if (row_dim != dim) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(dim) + " feature values, got " +
                             std::to_string(row_dim));
        }
        if (sensor == 1) {
            flush_block(line_no);
            block_class_idx = cls;
        } else if (sensor != static_cast<int>(block.size()) + 1 || cls != block_class_idx) {
            throw ParseError("line " + std::to_string(line_no) +
                             ": sensor rows must run 1..U with one class per sample");
        }
        Eigen::VectorXd x(dim);
        for (int n = 0; n < dim; ++n) x(n) = row[n + 2];
        block.push_back(std::move(x));
    }
    flush_block(line_no);
    if (samples.empty()) throw ParseError("samples file has no rows: " + path);
    return samples;
}

} // namespace aircomp
