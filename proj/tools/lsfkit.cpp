// SPDX-License-Identifier: Apache-2.0
//
// lsfkit - time-frequency characterization of non-stationary fading channels
// Copyright (C) 2026 lsfkit contributors
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

#include "lsfkit/errors.hpp"
#include "lsfkit/pipeline.hpp"
#include "lsfkit/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <string>

namespace
{

struct CliOptions
{
    lsfkit::PipelineConfig config;
    double noise_delay_floor_us = 2.0;
    std::string floor_stat = "mean";
    std::string out = "out";
};

void add_channel_source(CLI::App *cmd, CliOptions &opt)
{
    cmd->add_option("--input", opt.config.input, "TVFR container to analyze");
    cmd->add_option("--preset", opt.config.preset,
                    "scenario preset: crossing, convoy-obstructed, tunnel-like, two-path-static");
    cmd->add_option("--seed", opt.config.seed, "seed for synthesis noise and preset draws");
}

void add_synth_grid(CLI::App *cmd, CliOptions &opt)
{
    cmd->add_option("--snapshots", opt.config.synth_snapshots, "snapshots S to synthesize");
    cmd->add_option("--links", opt.config.synth_links, "links L to synthesize");
    cmd->add_option("--bins", opt.config.synth_bins, "frequency bins Q to synthesize");
    cmd->add_option("--bandwidth", opt.config.synth_bandwidth, "bandwidth B [Hz]");
    cmd->add_option("--ts", opt.config.synth_snapshot_interval, "snapshot interval t_s [s]");
    cmd->add_option("--fc", opt.config.synth_carrier, "carrier frequency [Hz]");
    cmd->add_option("--noise", opt.config.noise_power, "relative noise power");
    cmd->add_option("--two-path-split", opt.config.two_path_split,
                    "power fraction of the first path (two-path-static)");
    cmd->add_option("--two-path-delay1", opt.config.two_path_delay1,
                    "first path delay [s] (two-path-static)");
    cmd->add_option("--two-path-delay2", opt.config.two_path_delay2,
                    "second path delay [s] (two-path-static)");
}

void add_estimation(CLI::App *cmd, CliOptions &opt)
{
    cmd->add_option("--region-time", opt.config.region_time, "stationarity region extent M");
    cmd->add_option("--region-freq", opt.config.region_freq, "stationarity region extent N");
    cmd->add_option("--tapers-time", opt.config.tapers_time, "time tapers I");
    cmd->add_option("--tapers-freq", opt.config.tapers_freq, "frequency tapers J");
    cmd->add_option("--guard-db", opt.config.guard_db, "threshold guard above the noise floor [dB]");
    cmd->add_option("--noise-delay-floor-us", opt.noise_delay_floor_us,
                    "delays beyond this bound estimate the noise floor [us]");
    cmd->add_option("--floor-stat", opt.floor_stat, "noise floor statistic: mean or median")
        ->check(CLI::IsMember({"mean", "median"}));
    cmd->add_option("--kf", opt.config.kf_select, "emit a time series for this frequency region");
    cmd->add_option("--k", opt.config.coherence_level, "coherence correlation level");
}

void finalize(CliOptions &opt)
{
    opt.config.noise_delay_floor = opt.noise_delay_floor_us * 1e-6;
    opt.config.floor_stat =
        opt.floor_stat == "median" ? lsfkit::FloorStat::median : lsfkit::FloorStat::mean;
    opt.config.out_dir = opt.out;
}

void print_artifacts(const lsfkit::RunResult &result)
{
    for (const auto &file : result.files)
        std::cout << (result.out_dir / file).string() << '\n';
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"lsfkit - multitaper delay-Doppler characterization of fading channels"};
    app.set_version_flag("--version", LSFKIT_VERSION);
    app.set_config("--config", "", "key = value configuration file with [subcommand] sections");
    app.require_subcommand(1);

    CliOptions opt;

    auto *synth = app.add_subcommand("synth", "write a synthetic TVFR container");
    add_channel_source(synth, opt);
    add_synth_grid(synth, opt);
    synth->add_option("--out", opt.out, "output container path");

    auto *estimate = app.add_subcommand("estimate", "estimate the scattering function");
    auto *spreads = app.add_subcommand("spreads", "estimate spreads per stationarity region");
    auto *report = app.add_subcommand("report", "full pipeline: spreads, fits, coherence");
    for (auto *cmd : {estimate, spreads, report})
    {
        add_channel_source(cmd, opt);
        add_synth_grid(cmd, opt);
        add_estimation(cmd, opt);
        cmd->add_option("--out", opt.out, "output directory");
    }

    auto *fit = app.add_subcommand("fit", "fit spread distributions from a spreads CSV");
    fit->add_option("--input", opt.config.input, "spreads CSV")->required();
    fit->add_option("--out", opt.out, "output directory");

    auto *coherence = app.add_subcommand("coherence", "coherence report from a spreads CSV");
    coherence->add_option("--input", opt.config.input, "spreads CSV")->required();
    coherence->add_option("--k", opt.config.coherence_level, "coherence correlation level");
    coherence->add_option("--out", opt.out, "output directory");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        nlohmann::json err = {{"error", {{"kind", "cli-args"}, {"message", e.what()}}}};
        std::cerr << err.dump() << '\n';
        return 3;
    }

    finalize(opt);
    try
    {
        if (synth->parsed())
        {
            if (opt.config.preset.empty())
                throw lsfkit::config_error("input-or-preset", "synth requires --preset");
            const auto channel = lsfkit::realize_channel(opt.config);
            lsfkit::write_container(channel, opt.out);
            std::cout << opt.out << '\n';
        }
        else if (estimate->parsed())
        {
            print_artifacts(lsfkit::run_pipeline(opt.config, lsfkit::PipelineStage::estimate));
        }
        else if (spreads->parsed())
        {
            print_artifacts(lsfkit::run_pipeline(opt.config, lsfkit::PipelineStage::spreads));
        }
        else if (report->parsed())
        {
            print_artifacts(lsfkit::run_pipeline(opt.config, lsfkit::PipelineStage::report));
        }
        else if (fit->parsed())
        {
            print_artifacts(lsfkit::run_fit_stage(opt.config.input, opt.out));
        }
        else if (coherence->parsed())
        {
            print_artifacts(
                lsfkit::run_coherence_stage(opt.config.input, opt.out, opt.config.coherence_level));
        }
    }
    catch (const lsfkit::error &e)
    {
        nlohmann::json err = {{"error", {{"kind", e.kind()}, {"message", e.what()}}}};
        std::cerr << err.dump() << '\n';
        return e.exit_code();
    }
    catch (const std::exception &e)
    {
        nlohmann::json err = {{"error", {{"kind", "internal"}, {"message", e.what()}}}};
        std::cerr << err.dump() << '\n';
        return 1;
    }
    return 0;
}
