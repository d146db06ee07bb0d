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

#include "aircomp/precoding.hpp"

#include <cmath>
#include <limits>

namespace aircomp {

void fill_receive_coefficients(SubproblemCoefficients& sc, const ChannelSet& ch,
                               const Eigen::MatrixXcd& tx) {
    const int K = ch.num_subcarriers;
    const int U = ch.num_sensors;
    const int M = ch.num_antennas;
    sc.g.assign(K, Eigen::VectorXcd::Zero(M));
    sc.R.assign(K, Eigen::MatrixXcd::Zero(M, M));
    for (int k = 0; k < K; ++k) {
        for (int u = 0; u < U; ++u) {
            const Eigen::VectorXcd& h = ch.at(u, k);
            sc.g[k] += tx(u, k) * h;
            sc.R[k] += std::norm(tx(u, k)) * (h * h.adjoint());
        }
    }
}

void fill_transmit_coefficients(SubproblemCoefficients& sc, const ClassStatistics& stats,
                                const ChannelSet& ch, const std::vector<Eigen::VectorXcd>& rx,
                                double noise_power) {
    const int K = ch.num_subcarriers;
    const int U = ch.num_sensors;
    sc.alpha.resize(U, K);
    sc.beta.resize(U, K);
    sc.gamma.resize(K);
    for (int k = 0; k < K; ++k) {
        const double rx_norm2 = rx[k].squaredNorm();
        if (!(rx_norm2 > 0.0)) {
            throw ZeroDenominator("receive vector of subcarrier " + std::to_string(k) +
                                  " is zero");
        }
        sc.gamma(k) = 0.5 * noise_power * rx_norm2;
        for (int u = 0; u < U; ++u) {
            const cxd a = rx[k].dot(ch.at(u, k));
            sc.alpha(u, k) = a;
            sc.beta(u, k) = stats.pair_variance(k) * std::norm(a);
        }
    }
    sc.pair_weight = compute_separation(stats).pair_weight();
    sc.chi = Eigen::VectorXcd::Zero(K);
}

double receive_objective(const Eigen::VectorXcd& w, const Eigen::VectorXcd& g,
                         const Eigen::MatrixXcd& R, double pair_var, double noise_power) {
    const double denom =
        pair_var * (w.dot(R * w)).real() + 0.5 * noise_power * w.squaredNorm();
    if (!(denom > 0.0)) return 0.0;
    return std::norm(w.dot(g)) / denom;
}

std::vector<Eigen::VectorXcd> optimize_receive(const SystemConfig& cfg,
                                               const ClassStatistics& stats, const ChannelSet& ch,
                                               const Eigen::MatrixXcd& tx) {
    const int K = ch.num_subcarriers;
    const int M = ch.num_antennas;
    const double budget = std::sqrt(cfg.server_power);

    SubproblemCoefficients sc;
    fill_receive_coefficients(sc, ch, tx);

    std::vector<Eigen::VectorXcd> rx(K);
    for (int k = 0; k < K; ++k) {
        if (sc.g[k].squaredNorm() == 0.0) {
            // No signal on this subcarrier; any feasible vector is optimal.
            Eigen::VectorXcd w = Eigen::VectorXcd::Zero(M);
            w(0) = budget;
            rx[k] = std::move(w);
            continue;
        }
        Eigen::MatrixXcd lhs = stats.pair_variance(k) * sc.R[k];
        lhs.diagonal().array() += 0.5 * cfg.noise_power;
        Eigen::VectorXcd w = lhs.llt().solve(sc.g[k]);
        rx[k] = (budget / w.norm()) * w;
    }
    return rx;
}

double transmit_surrogate(const SubproblemCoefficients& sc, const Eigen::VectorXcd& chi,
                          const Eigen::MatrixXcd& tx) {
    const int K = static_cast<int>(sc.gamma.size());
    const int U = static_cast<int>(tx.rows());
    double value = 0.0;
    for (int k = 0; k < K; ++k) {
        cxd coherent{0.0, 0.0};
        double denom = sc.gamma(k);
        for (int u = 0; u < U; ++u) {
            coherent += sc.alpha(u, k) * tx(u, k);
            denom += sc.beta(u, k) * std::norm(tx(u, k));
        }
        value += sc.pair_weight(k) *
                 (2.0 * (std::conj(chi(k)) * coherent).real() - std::norm(chi(k)) * denom);
    }
    return value;
}

double transmit_objective(const SubproblemCoefficients& sc, const Eigen::MatrixXcd& tx) {
    const int K = static_cast<int>(sc.gamma.size());
    const int U = static_cast<int>(tx.rows());
    double value = 0.0;
    for (int k = 0; k < K; ++k) {
        cxd coherent{0.0, 0.0};
        double denom = sc.gamma(k);
        for (int u = 0; u < U; ++u) {
            coherent += sc.alpha(u, k) * tx(u, k);
            denom += sc.beta(u, k) * std::norm(tx(u, k));
        }
        value += sc.pair_weight(k) * std::norm(coherent) / denom;
    }
    return value;
}

Eigen::MatrixXcd transmit_inner_qp(const SubproblemCoefficients& sc, const Eigen::VectorXcd& chi,
                                   double sensor_power, const OptimizerOptions& opts) {
    const int K = static_cast<int>(sc.gamma.size());
    const int U = static_cast<int>(sc.alpha.rows());
    Eigen::MatrixXcd tx(U, K);

    for (int u = 0; u < U; ++u) {
        // Stationary point per subcarrier: tx = numer / (quad + lambda), with
        // one multiplier per sensor chosen so the power budget holds with
        // complementary slackness.
        Eigen::VectorXcd numer(K);
        Eigen::VectorXd quad(K);
        bool any_signal = false;
        for (int k = 0; k < K; ++k) {
            numer(k) = sc.pair_weight(k) * chi(k) * std::conj(sc.alpha(u, k));
            quad(k) = sc.pair_weight(k) * std::norm(chi(k)) * sc.beta(u, k);
            if (std::norm(numer(k)) > 0.0) any_signal = true;
        }
        if (!any_signal) {
            tx.row(u).setZero();
            continue;
        }

        auto power_at = [&](double lambda) {
            double p = 0.0;
            for (int k = 0; k < K; ++k) {
                const double n2 = std::norm(numer(k));
                if (n2 == 0.0) continue;
                const double d = quad(k) + lambda;
                p += n2 / (d * d);
            }
            return p;
        };

        double lambda = 0.0;
        if (power_at(0.0) > sensor_power) {
            // Bracket the multiplier: power_at is strictly decreasing, so grow
            // the upper end until the budget is met, then bisect.
            double lo = 0.0;
            double hi = 1.0;
            while (power_at(hi) > sensor_power) {
                lo = hi;
                hi *= 2.0;
            }
            for (int step = 0; step < opts.max_bisect && hi - lo > opts.bisect_interval; ++step) {
                const double mid = 0.5 * (lo + hi);
                if (power_at(mid) > sensor_power) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lambda = hi; // feasible side of the bracket
        }

        for (int k = 0; k < K; ++k) {
            const double d = quad(k) + lambda;
            tx(u, k) = (std::norm(numer(k)) > 0.0 && d > 0.0) ? numer(k) / d : cxd{0.0, 0.0};
        }
    }
    return tx;
}

Eigen::MatrixXcd optimize_transmit(const SystemConfig& cfg, const ClassStatistics& stats,
                                   const ChannelSet& ch, const std::vector<Eigen::VectorXcd>& rx,
                                   const Eigen::MatrixXcd& tx_init, const OptimizerOptions& opts,
                                   bool* converged) {
    if (!cfg.sensor_power) throw NonPositiveParameter("sensor_power is not resolved");
    const double budget = *cfg.sensor_power;
    const int K = ch.num_subcarriers;
    const int U = ch.num_sensors;

    SubproblemCoefficients sc;
    fill_transmit_coefficients(sc, stats, ch, rx, cfg.noise_power);

    Eigen::MatrixXcd tx = tx_init;
    bool done = false;
    double prev = -std::numeric_limits<double>::infinity();
    for (int it = 0; it < opts.max_inner; ++it) {
        // Closed-form update of the ratio variable at the current iterate.
        for (int k = 0; k < K; ++k) {
            cxd coherent{0.0, 0.0};
            double denom = sc.gamma(k);
            for (int u = 0; u < U; ++u) {
                coherent += sc.alpha(u, k) * tx(u, k);
                denom += sc.beta(u, k) * std::norm(tx(u, k));
            }
            sc.chi(k) = coherent / denom;
        }
        tx = transmit_inner_qp(sc, sc.chi, budget, opts);
        const double value = transmit_surrogate(sc, sc.chi, tx);
        if (std::isfinite(prev) &&
            value - prev <= opts.inner_tol * std::max(std::abs(prev), 1e-12)) {
            done = true;
            break;
        }
        prev = value;
    }
    if (converged) *converged = done;
    // The multiplier bisection leaves the last iterate a hair inside the
    // budget, so guard against a sub-rounding regression relative to the
    // warm start.
    if (transmit_objective(sc, tx) < transmit_objective(sc, tx_init)) {
        return tx_init;
    }
    return tx;
}

OptimizerReport alternating_optimize(const SystemConfig& cfg, const ClassStatistics& stats,
                                     const ChannelSet& ch, const Precoders& init,
                                     const OptimizerOptions& opts) {
    OptimizerReport report;
    report.final_pc = init;
    report.dg_trace.push_back(overall_dg(stats, ch, report.final_pc, cfg.noise_power));

    for (int round = 1; round <= opts.max_rounds; ++round) {
        report.final_pc.rx = optimize_receive(cfg, stats, ch, report.final_pc.tx);
        bool inner_ok = true;
        report.final_pc.tx = optimize_transmit(cfg, stats, ch, report.final_pc.rx,
                                               report.final_pc.tx, opts, &inner_ok);
        report.inner_converged = report.inner_converged && inner_ok;

        const double dg = overall_dg(stats, ch, report.final_pc, cfg.noise_power);
        const double prev = report.dg_trace.back();
        report.dg_trace.push_back(dg);
        report.iterations = round;
        if (dg - prev <= opts.outer_tol * std::max(prev, 1e-12)) {
            report.converged = true;
            break;
        }
    }
    return report;
}

Precoders pat_mc_precoders(const SystemConfig& cfg, const ChannelSet& ch) {
    if (!cfg.sensor_power) throw NonPositiveParameter("sensor_power is not resolved");
    const int K = ch.num_subcarriers;
    const int U = ch.num_sensors;
    const double tx_amp = std::sqrt(*cfg.sensor_power / K);

    Precoders pc;
    pc.tx.resize(U, K);
    pc.rx.resize(K);
    for (int k = 0; k < K; ++k) {
        Eigen::VectorXcd summed = Eigen::VectorXcd::Zero(ch.num_antennas);
        for (int u = 0; u < U; ++u) summed += ch.at(u, k);
        const double norm = summed.norm();
        if (!(norm > 0.0)) {
            throw DegenerateChannel("summed channel of subcarrier " + std::to_string(k) +
                                    " is zero");
        }
        pc.rx[k] = (std::sqrt(cfg.server_power) / norm) * summed;

        for (int u = 0; u < U; ++u) {
            const cxd c = pc.rx[k].dot(ch.at(u, k));
            const double mag = std::abs(c);
            if (!(mag > 0.0)) {
                throw DegenerateChannel("combined channel of sensor " + std::to_string(u) +
                                        ", subcarrier " + std::to_string(k) + " is zero");
            }
            pc.tx(u, k) = tx_amp * (std::conj(c) / mag);
        }
    }
    return pc;
}

} // namespace aircomp
