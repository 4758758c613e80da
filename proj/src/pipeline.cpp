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

#include "lsfkit/pipeline.hpp"
#include "lsfkit/dispersion.hpp"
#include "lsfkit/errors.hpp"
#include "lsfkit/mixfit.hpp"
#include "lsfkit/version.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lsfkit
{

namespace
{

using nlohmann::json;

json config_json(const PipelineConfig &config)
{
    json j;
    j["input"] = config.input;
    j["preset"] = config.preset;
    j["region_time"] = config.region_time;
    j["region_freq"] = config.region_freq;
    j["tapers_time"] = config.tapers_time;
    j["tapers_freq"] = config.tapers_freq;
    j["guard_db"] = config.guard_db;
    j["noise_delay_floor_s"] = config.noise_delay_floor;
    j["floor_stat"] = config.floor_stat == FloorStat::mean ? "mean" : "median";
    j["kf_select"] = config.kf_select;
    j["coherence_level"] = config.coherence_level;
    j["seed"] = config.seed;
    j["synth"] = {{"snapshots", config.synth_snapshots},
                  {"links", config.synth_links},
                  {"bins", config.synth_bins},
                  {"bandwidth_hz", config.synth_bandwidth},
                  {"snapshot_interval_s", config.synth_snapshot_interval},
                  {"carrier_hz", config.synth_carrier},
                  {"noise_power", config.noise_power},
                  {"two_path_split", config.two_path_split},
                  {"two_path_delay1_s", config.two_path_delay1},
                  {"two_path_delay2_s", config.two_path_delay2}};
    return j;
}

std::string file_digest(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return fnv1a64_hex(bytes.data(), bytes.size());
}

// Collects emitted files and finishes with the manifest.
class ArtifactSet
{
  public:
    explicit ArtifactSet(std::filesystem::path out_dir) : out_dir_(std::move(out_dir))
    {
        std::filesystem::create_directories(out_dir_);
    }

    std::filesystem::path path(const std::string &name)
    {
        names_.push_back(name);
        return out_dir_ / name;
    }

    void note(const std::string &text) { notes_.push_back(text); }

    RunResult finish(json manifest)
    {
        std::sort(names_.begin(), names_.end());
        json artifacts = json::array();
        for (const auto &name : names_)
        {
            const auto file = out_dir_ / name;
            artifacts.push_back({{"file", name},
                                 {"bytes", std::filesystem::file_size(file)},
                                 {"fnv1a64", file_digest(file)}});
        }
        manifest["artifacts"] = artifacts;
        manifest["notes"] = notes_;
        manifest["version"] = LSFKIT_VERSION;
        std::ofstream out(out_dir_ / "manifest.json", std::ios::trunc);
        if (!out)
            throw input_error("output-unwritable", "cannot write manifest.json");
        out << manifest.dump(2) << '\n';
        RunResult result;
        result.out_dir = out_dir_;
        result.files = std::move(names_);
        result.files.push_back("manifest.json");
        return result;
    }

  private:
    std::filesystem::path out_dir_;
    std::vector<std::string> names_;
    std::vector<std::string> notes_;
};

void validate_config(const PipelineConfig &config)
{
    if (config.input.empty() == config.preset.empty())
        throw config_error("input-or-preset", "exactly one of input path or preset must be set");
    if (config.tapers_time < 1 || config.tapers_freq < 1)
        throw config_error("taper-count", "taper counts must be at least 1");
    if (config.guard_db < 0.0)
        throw config_error("guard-db", "threshold guard must be non-negative");
    if (config.kf_select < 0)
        throw config_error("kf-select", "frequency-region selector must be positive when set");
    if (!(config.coherence_level > 0.0 && config.coherence_level < 1.0))
        throw config_error("coherence-level", "correlation level must lie in (0, 1)");
}

void write_lsf_summary_csv(const std::vector<LocalScatteringFunction> &per_link,
                           const LocalScatteringFunction &combined,
                           const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw input_error("output-unwritable", "cannot open " + path.string() + " for writing");
    out << "link,k_t,k_f,energy\n";
    char buf[64];
    auto emit = [&](int link, const LocalScatteringFunction &lsf) {
        for (int k_t = 1; k_t <= lsf.num_time_regions(); ++k_t)
            for (int k_f = 1; k_f <= lsf.num_freq_regions(); ++k_f)
            {
                std::snprintf(buf, sizeof(buf), "%.17g", lsf.at(k_t, k_f).sum());
                out << link << ',' << k_t << ',' << k_f << ',' << buf << '\n';
            }
    };
    emit(0, combined); // link 0 = all links combined
    for (std::size_t l = 0; l < per_link.size(); ++l)
        emit(static_cast<int>(l + 1), per_link[l]);
}

void write_threshold_csv(const ThresholdReport &report, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw input_error("output-unwritable", "cannot open " + path.string() + " for writing");
    out << "k_t,k_f,noise_floor,threshold,bins_retained\n";
    char buf[64];
    for (int k_t = 0; k_t < report.floor.rows(); ++k_t)
        for (int k_f = 0; k_f < report.floor.cols(); ++k_f)
        {
            out << (k_t + 1) << ',' << (k_f + 1) << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", report.floor(k_t, k_f));
            out << buf << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", report.threshold(k_t, k_f));
            out << buf << ',' << report.bins_retained(k_t, k_f) << '\n';
        }
}

void write_timeseries_csv(const SpreadSeries &spreads, int k_f, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw input_error("output-unwritable", "cannot open " + path.string() + " for writing");
    out << "k_t,sigma_tau_s,sigma_nu_hz,masked\n";
    char buf[64];
    for (int k_t = 1; k_t <= spreads.num_time_regions(); ++k_t)
    {
        out << k_t << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", spreads.sigma_tau(k_t - 1, k_f - 1));
        out << buf << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", spreads.sigma_nu(k_t - 1, k_f - 1));
        out << buf << ',' << (spreads.mask(k_t - 1, k_f - 1) ? 0 : 1) << '\n';
    }
}

struct PooledSpreads
{
    std::vector<double> sigma_tau;
    std::vector<double> sigma_nu;
};

PooledSpreads pool_unmasked(const SpreadSeries &spreads)
{
    PooledSpreads pooled;
    for (int r = 0; r < spreads.sigma_tau.rows(); ++r)
        for (int c = 0; c < spreads.sigma_tau.cols(); ++c)
            if (spreads.mask(r, c))
            {
                pooled.sigma_tau.push_back(spreads.sigma_tau(r, c));
                pooled.sigma_nu.push_back(spreads.sigma_nu(r, c));
            }
    return pooled;
}

// Fit one pooled metric if its samples support it; records a note otherwise.
void fit_metric(ArtifactSet &artifacts, const std::string &metric, std::vector<double> samples)
{
    std::erase_if(samples, [](double v) { return !(v > 0.0); });
    if (samples.size() < 100)
    {
        artifacts.note("fit_" + metric + " skipped: fewer than 100 positive samples");
        return;
    }
    if (std::all_of(samples.begin(), samples.end(),
                    [&](double v) { return v == samples.front(); }))
    {
        artifacts.note("fit_" + metric + " skipped: degenerate sample set");
        return;
    }
    const MixtureFit fit = fit_mixture(samples);
    write_fit_json(fit, artifacts.path("fit_" + metric + ".json"));
    write_cdf_csv(samples, fit, artifacts.path("cdf_" + metric + ".csv"));
}

PooledSpreads read_spreads_csv(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw input_error("input-not-found", "cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("k_t,k_f,sigma_tau_s", 0) != 0)
        throw input_error("bad-header", path.string() + " is not a spreads CSV");
    PooledSpreads pooled;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        std::istringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ','))
            fields.push_back(field);
        if (fields.size() != 5)
            throw input_error("bad-row", "malformed spreads row: " + line);
        if (fields[4] == "1")
            continue;
        pooled.sigma_tau.push_back(std::stod(fields[2]));
        pooled.sigma_nu.push_back(std::stod(fields[3]));
    }
    return pooled;
}

} // namespace

std::string fnv1a64_hex(const void *data, std::size_t size)
{
    const auto *bytes = static_cast<const unsigned char *>(data);
    std::uint64_t hash = 0xCBF29CE484222325ull;
    for (std::size_t i = 0; i < size; ++i)
    {
        hash ^= bytes[i];
        hash *= 0x100000001B3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

TimeVariantFrequencyResponse realize_channel(const PipelineConfig &config)
{
    validate_config(config);
    if (!config.input.empty())
    {
        if (!std::filesystem::exists(config.input))
            throw input_error("input-not-found", "no such file: " + config.input);
        return read_container(config.input);
    }
    ScenarioPreset preset = ScenarioPreset::named(config.preset);
    preset.noise_power = config.noise_power;
    preset.two_path_split = config.two_path_split;
    preset.two_path_delay1 = config.two_path_delay1;
    preset.two_path_delay2 = config.two_path_delay2;
    const GridParams grid(config.synth_snapshot_interval,
                          config.synth_bandwidth / config.synth_bins, config.synth_bandwidth,
                          config.synth_snapshots, config.synth_bins, config.synth_links,
                          config.synth_carrier);
    const auto paths = preset_paths(preset, grid, config.seed);
    return synthesize(paths, grid, preset.noise_power, config.seed);
}

RunResult run_pipeline(const PipelineConfig &config, PipelineStage stage)
{
    validate_config(config);
    const TimeVariantFrequencyResponse channel = realize_channel(config);
    const GridParams &grid = channel.grid();
    const RegionSpec region(config.region_time, config.region_freq);
    const TaperSet tapers = build_taper_set(config.region_time, config.region_freq,
                                            config.tapers_time, config.tapers_freq);

    std::vector<LocalScatteringFunction> per_link;
    per_link.reserve(grid.num_links);
    for (std::uint32_t l = 1; l <= grid.num_links; ++l)
        per_link.push_back(estimate_lsf(channel, static_cast<int>(l), region, tapers));
    const LocalScatteringFunction combined =
        combine_links(per_link, static_cast<int>(grid.num_links));

    ArtifactSet artifacts(config.out_dir);
    json manifest;
    const json cfg = config_json(config);
    manifest["config"] = cfg;
    const std::string cfg_dump = cfg.dump();
    manifest["config_hash"] = fnv1a64_hex(cfg_dump.data(), cfg_dump.size());
    manifest["derived"] = {
        {"tau_s", delay_resolution(grid, region)},
        {"nu_s", doppler_resolution(grid, region)},
        {"f_s", grid.freq_bin},
        {"region_time_extent_s", region_time_extent(grid, region)},
        {"region_freq_extent_hz", region_freq_extent(grid, region)},
        {"num_time_regions", combined.num_time_regions()},
        {"num_freq_regions", combined.num_freq_regions()},
        {"num_links", grid.num_links}};

    write_lsf(combined, artifacts.path("lsf_combined.lsf"));
    write_lsf_summary_csv(per_link, combined, artifacts.path("lsf_summary.csv"));
    if (stage == PipelineStage::estimate)
        return artifacts.finish(std::move(manifest));

    auto [thresholded, threshold_report] =
        threshold_lsf(combined, config.guard_db, config.noise_delay_floor, config.floor_stat);
    write_threshold_csv(threshold_report, artifacts.path("threshold_report.csv"));
    const MarginalProfile delay_profile = pdp(thresholded);
    const MarginalProfile doppler_profile = dsd(thresholded);
    write_marginal_csv(delay_profile, artifacts.path("pdp.csv"));
    write_marginal_csv(doppler_profile, artifacts.path("dsd.csv"));
    const SpreadSeries spreads = rms_spreads(delay_profile, doppler_profile);
    write_spreads_csv(spreads, artifacts.path("spreads.csv"));
    if (config.kf_select > 0)
    {
        if (config.kf_select > spreads.num_freq_regions())
            throw config_error("kf-select", "frequency-region selector exceeds K_f = " +
                                                std::to_string(spreads.num_freq_regions()));
        write_timeseries_csv(spreads, config.kf_select, artifacts.path("spreads_timeseries.csv"));
    }
    if (stage == PipelineStage::spreads)
        return artifacts.finish(std::move(manifest));

    const PooledSpreads pooled = pool_unmasked(spreads);
    fit_metric(artifacts, "sigma_tau", pooled.sigma_tau);
    fit_metric(artifacts, "sigma_nu", pooled.sigma_nu);

    const auto tau_max = std::max_element(pooled.sigma_tau.begin(), pooled.sigma_tau.end());
    const auto nu_max = std::max_element(pooled.sigma_nu.begin(), pooled.sigma_nu.end());
    if (tau_max != pooled.sigma_tau.end() && nu_max != pooled.sigma_nu.end() && *tau_max > 0.0 &&
        *nu_max > 0.0)
    {
        const CoherenceReport report = coherence(*tau_max, *nu_max, config.coherence_level);
        json j = {{"b_coh_hz", report.coherence_bandwidth},
                  {"t_coh_s", report.coherence_time},
                  {"k", report.level},
                  {"sigma_tau_max_s", *tau_max},
                  {"sigma_nu_max_hz", *nu_max}};
        std::ofstream out(artifacts.path("coherence.json"), std::ios::trunc);
        out << j.dump(2) << '\n';
    }
    else
    {
        artifacts.note("coherence skipped: no unmasked regions with positive spreads");
    }
    return artifacts.finish(std::move(manifest));
}

RunResult run_fit_stage(const std::filesystem::path &spreads_csv,
                        const std::filesystem::path &out_dir)
{
    const PooledSpreads pooled = read_spreads_csv(spreads_csv);
    ArtifactSet artifacts(out_dir);
    fit_metric(artifacts, "sigma_tau", pooled.sigma_tau);
    fit_metric(artifacts, "sigma_nu", pooled.sigma_nu);
    json manifest;
    manifest["config"] = {{"spreads_csv", spreads_csv.filename().string()}};
    const std::string dump = manifest["config"].dump();
    manifest["config_hash"] = fnv1a64_hex(dump.data(), dump.size());
    return artifacts.finish(std::move(manifest));
}

RunResult run_coherence_stage(const std::filesystem::path &spreads_csv,
                              const std::filesystem::path &out_dir, double level)
{
    const PooledSpreads pooled = read_spreads_csv(spreads_csv);
    if (pooled.sigma_tau.empty())
        throw numeric_error("undefined-coherence", "no unmasked spread samples in " +
                                                       spreads_csv.string());
    const double tau_max = *std::max_element(pooled.sigma_tau.begin(), pooled.sigma_tau.end());
    const double nu_max = *std::max_element(pooled.sigma_nu.begin(), pooled.sigma_nu.end());
    const CoherenceReport report = coherence(tau_max, nu_max, level);
    ArtifactSet artifacts(out_dir);
    json j = {{"b_coh_hz", report.coherence_bandwidth},
              {"t_coh_s", report.coherence_time},
              {"k", report.level},
              {"sigma_tau_max_s", tau_max},
              {"sigma_nu_max_hz", nu_max}};
    std::ofstream out(artifacts.path("coherence.json"), std::ios::trunc);
    out << j.dump(2) << '\n';
    json manifest;
    manifest["config"] = {{"spreads_csv", spreads_csv.filename().string()}, {"k", level}};
    const std::string dump = manifest["config"].dump();
    manifest["config_hash"] = fnv1a64_hex(dump.data(), dump.size());
    return artifacts.finish(std::move(manifest));
}

} // namespace lsfkit
