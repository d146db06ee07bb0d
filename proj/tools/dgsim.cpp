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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "aircomp/datagen.hpp"
#include "aircomp/io.hpp"
#include "aircomp/metrics.hpp"
#include "aircomp/precoding.hpp"
#include "aircomp/selftest.hpp"
#include "aircomp/simulate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    int threads = 0;
};

struct Loaded {
    aircomp::RunConfig rc;
    aircomp::ClassStatistics stats;
};

// Config-stage failures (parse or invariant violations) map to exit 2.
std::optional<Loaded> load_and_validate(const CommonArgs& args) {
    try {
        Loaded loaded;
        loaded.rc = aircomp::load_run_config(args.config_path);
        if (args.seed) loaded.rc.seed = *args.seed;
        loaded.stats = aircomp::build_stats(loaded.rc);
        aircomp::validate_config(loaded.rc.system, loaded.stats);
        return loaded;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return std::nullopt;
    }
}

void print_suite(const aircomp::selftest::SuiteResult& res) {
    std::printf("[%s] %s: %d cases, worst %.3g%s\n", res.passed ? "PASS" : "FAIL",
                res.name.c_str(), res.cases, res.worst,
                res.detail.empty() ? "" : ("; " + res.detail).c_str());
}

int cmd_validate(const CommonArgs& args, const std::string& suite_filter) {
    const auto loaded = load_and_validate(args);
    if (!loaded) return kExitConfig;
    const auto& rc = loaded->rc;

    const bool all = suite_filter.empty();
    bool ok = true;
    try {
        if (all || suite_filter == "theorem1") {
            const auto res = aircomp::selftest::theorem1_identity(200, 1e-9, rc.seed, args.threads);
            print_suite(res);
            ok = ok && res.passed;
        }
        if (all || suite_filter == "lemma1") {
            const auto res =
                aircomp::selftest::lemma1_moments(4, 20000, 4.0, 0.05, rc.seed, args.threads);
            print_suite(res);
            ok = ok && res.passed;
        }
        if (all || suite_filter == "kkt") {
            auto res = aircomp::selftest::receive_oracle(20, 50, 1e-8, rc.seed);
            auto res2 = aircomp::selftest::transmit_oracle(20, 1e-6, rc.seed);
            aircomp::selftest::SuiteResult merged;
            merged.name = "kkt";
            merged.passed = res.passed && res2.passed;
            merged.cases = res.cases + res2.cases;
            merged.worst = std::max(res.worst, res2.worst);
            merged.detail = !res.detail.empty() ? res.detail : res2.detail;
            print_suite(merged);
            ok = ok && merged.passed;
        }
        if (all || suite_filter == "ascent") {
            const auto res = aircomp::selftest::ascent_dominance(loaded->rc.system, loaded->stats,
                                                                 8, rc.seed, args.threads);
            print_suite(res);
            ok = ok && res.passed;
        }
    } catch (const std::exception& e) {
        std::cerr << "suite error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return ok ? kExitOk : kExitRuntime;
}

int cmd_sweep(const CommonArgs& args, std::optional<long> trials_override,
              std::optional<std::string> out_override) {
    auto loaded = load_and_validate(args);
    if (!loaded) return kExitConfig;
    auto& rc = loaded->rc;
    if (trials_override) rc.trials = *trials_override;
    if (out_override) rc.out_path = *out_override;
    if (rc.trials < 1) {
        std::cerr << "config error: trials must be >= 1\n";
        return kExitConfig;
    }

    try {
        const auto records = aircomp::run_sweep(rc.system, loaded->stats, rc.schemes,
                                                rc.snr_grid_db, rc.trials, rc.seed, args.threads);
        const std::string csv = aircomp::format_csv(records);
        std::ofstream out(rc.out_path, std::ios::binary | std::ios::trunc);
        if (!out) {
            std::cerr << "cannot open output file: " << rc.out_path << "\n";
            return kExitRuntime;
        }
        out << csv;
        out.close();
        if (!out) {
            std::remove(rc.out_path.c_str());
            std::cerr << "failed writing output file: " << rc.out_path << "\n";
            return kExitRuntime;
        }
        std::cerr << "wrote " << records.size() << " rows to " << rc.out_path << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::remove(rc.out_path.c_str());
        std::cerr << "sweep error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

int cmd_dg(const CommonArgs& args) {
    const auto loaded = load_and_validate(args);
    if (!loaded) return kExitConfig;
    const auto& rc = loaded->rc;
    const auto& stats = loaded->stats;

    aircomp::SystemConfig cfg = rc.system;
    try {
        if (cfg.snr) {
            cfg = aircomp::resolve_sensor_power(cfg, stats, *cfg.snr);
        } else if (!rc.snr_grid_db.empty()) {
            cfg = aircomp::resolve_sensor_power(cfg, stats,
                                                aircomp::db_to_linear(rc.snr_grid_db.front()));
        } else if (!cfg.sensor_power) {
            std::cerr << "config error: need snr_db, snr_grid_db, or sensor_power_dbm\n";
            return kExitConfig;
        }
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        aircomp::Rng rng(aircomp::derive_seed(rc.seed, 0xd6));
        const aircomp::ChannelSet ch = aircomp::sample_channels(cfg, rng);
        const aircomp::Precoders baseline = aircomp::pat_mc_precoders(cfg, ch);
        const aircomp::OptimizerReport report =
            aircomp::alternating_optimize(cfg, stats, ch, baseline);

        const double dg_baseline = aircomp::overall_dg(stats, ch, baseline, cfg.noise_power);
        const double dg_proposed = report.dg_trace.back();
        std::printf("seed: %llu\n", static_cast<unsigned long long>(rc.seed));
        std::printf("snr (linear): %.10g\n", cfg.snr ? *cfg.snr : 0.0);
        std::printf("pat_mc overall DG:   %.10g\n", dg_baseline);
        std::printf("proposed overall DG: %.10g (%d rounds, %s)\n", dg_proposed,
                    report.iterations, report.converged ? "converged" : "round cap");

        const aircomp::AggregatedStatistics agg =
            aircomp::aggregate_statistics(stats, ch, report.final_pc, cfg.noise_power);
        double worst_residual = 0.0;
        std::printf("pairwise DG (proposed):\n");
        std::printf("  %3s %3s %16s %16s\n", "l", "l'", "closed_form", "definition");
        for (int lp = 0; lp < stats.num_classes; ++lp) {
            for (int l = 0; l < lp; ++l) {
                const double cf = aircomp::pairwise_dg_closedform(stats, ch, report.final_pc,
                                                                  cfg.noise_power, l, lp);
                const double def = aircomp::pairwise_dg_definition(agg, l, lp);
                std::printf("  %3d %3d %16.8f %16.8f\n", l, lp, cf, def);
                const double rel =
                    std::abs(cf - def) / std::max({std::abs(cf), std::abs(def), 1e-12});
                worst_residual = std::max(worst_residual, rel);
            }
        }
        std::printf("definition-vs-closed-form residual: %.3g\n", worst_residual);
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "dg error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discriminant-gain simulator for over-the-air aggregated edge inference"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string suite_filter;
    std::optional<long> trials_override;
    std::optional<std::string> out_override;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", args.config_path, "path to JSON run configuration")
            ->required();
        cmd->add_option("--seed", args.seed, "override the configured seed");
        cmd->add_option("--threads", args.threads, "worker thread cap (0 = all cores)");
    };

    CLI::App* validate = app.add_subcommand("validate", "run the internal consistency suites");
    add_common(validate);
    validate->add_option("--suite", suite_filter,
                         "run only one suite: theorem1, lemma1, kkt, ascent");

    CLI::App* sweep = app.add_subcommand("sweep", "run the accuracy sweep and write CSV");
    add_common(sweep);
    sweep->add_option("--trials", trials_override, "override the configured trial count");
    sweep->add_option("--out", out_override, "override the configured output path");

    CLI::App* dg = app.add_subcommand("dg", "report DG for one sampled channel instance");
    add_common(dg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    if (!suite_filter.empty() && suite_filter != "theorem1" && suite_filter != "lemma1" &&
        suite_filter != "kkt" && suite_filter != "ascent") {
        std::cerr << "config error: unknown suite '" << suite_filter << "'\n";
        return kExitConfig;
    }

    if (validate->parsed()) return cmd_validate(args, suite_filter);
    if (sweep->parsed()) return cmd_sweep(args, trials_override, out_override);
    if (dg->parsed()) return cmd_dg(args);
    return kExitConfig;
}
