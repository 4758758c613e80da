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

#ifndef LSFKIT_PIPELINE_HPP
#define LSFKIT_PIPELINE_HPP

#include "lsfkit/marginal.hpp"
#include "lsfkit/synthchan.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace lsfkit
{

/// Everything one pipeline run needs: the channel source (container path or
/// preset), estimation geometry, threshold settings and output location.
struct PipelineConfig
{
    std::string input;  // TVFR container; empty when synthesizing
    std::string preset; // scenario preset name; empty when loading

    int region_time = 128; // M
    int region_freq = 128; // N
    int tapers_time = 2;   // I
    int tapers_freq = 2;   // J

    double guard_db = 5.0;
    double noise_delay_floor = 2e-6; // [s]
    FloorStat floor_stat = FloorStat::mean;

    int kf_select = 0; // emit a fixed-k_f time series when > 0
    double coherence_level = 0.5;

    std::uint64_t seed = 1;
    std::string out_dir = "out";

    // synthesis grid, used with `preset`
    std::uint32_t synth_snapshots = 384;
    std::uint32_t synth_links = 16;
    std::uint32_t synth_bins = 769;
    double synth_bandwidth = 240e6;
    double synth_snapshot_interval = 307.2e-6;
    double synth_carrier = 5.6e9;
    double noise_power = 1e-3;
    double two_path_split = 0.5;
    double two_path_delay1 = 500e-9; // [s]
    double two_path_delay2 = 600e-9; // [s]
};

enum class PipelineStage
{
    estimate, // scattering function dump + per-link summary
    spreads,  // + threshold report, marginals, spread series
    report    // + mixture fits, coherence
};

struct RunResult
{
    std::filesystem::path out_dir;
    std::vector<std::string> files; // emitted artifact names, manifest last
};

/// Runs the estimation pipeline up to the requested stage and writes the
/// artifact set plus a manifest (config hash, library version, derived grid
/// constants, content digest per file) into config.out_dir.
RunResult run_pipeline(const PipelineConfig &config, PipelineStage stage = PipelineStage::report);

/// Fits the pooled spread distributions recorded in a spreads CSV; writes
/// fit JSON and CDF CSV per metric plus a manifest.
RunResult run_fit_stage(const std::filesystem::path &spreads_csv,
                        const std::filesystem::path &out_dir);

/// Coherence bandwidth/time from the pooled spread maxima of a spreads CSV.
RunResult run_coherence_stage(const std::filesystem::path &spreads_csv,
                              const std::filesystem::path &out_dir, double level);

/// Builds the channel a config describes: reads the container or synthesizes
/// the preset on the configured grid.
TimeVariantFrequencyResponse realize_channel(const PipelineConfig &config);

/// FNV-1a 64-bit digest, hex-encoded; used for manifest content digests.
std::string fnv1a64_hex(const void *data, std::size_t size);

} // namespace lsfkit

#endif
