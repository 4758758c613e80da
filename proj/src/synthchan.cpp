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

#include "lsfkit/synthchan.hpp"
#include "lsfkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lsfkit
{

namespace
{

std::uint64_t mix64(std::uint64_t x)
{
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

double to_unit(std::uint64_t r)
{
    // (0, 1]: safe for the Box-Muller logarithm
    return (static_cast<double>(r >> 11) + 1.0) * 0x1.0p-53;
}

// Sequential deterministic stream for preset parameter draws.
struct SplitMix
{
    std::uint64_t state;
    explicit SplitMix(std::uint64_t seed) : state(seed) {}
    std::uint64_t next()
    {
        state += 0x9E3779B97F4A7C15ull;
        return mix64(state);
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * to_unit(next()); }
    int uniform_int(int lo, int hi) // inclusive bounds
    {
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

// Step function over region blocks: value_k holds on
// [(k*M - M/2)*t_s, (k*M + M/2)*t_s).
Trajectory region_steps(const GridParams &grid, int region_extent,
                        const std::vector<double> &values)
{
    const double t_s = grid.snapshot_interval;
    const int half = region_extent / 2;
    Trajectory traj;
    for (std::size_t k = 0; k < values.size(); ++k)
    {
        const double start = (static_cast<double>(k + 1) * region_extent - half) * t_s;
        const double end = (static_cast<double>(k + 1) * region_extent + half) * t_s;
        traj.knots.push_back({start, values[k]});
        traj.knots.push_back({end, values[k]});
    }
    return traj;
}

} // namespace

double Trajectory::at(double time) const
{
    if (knots.empty())
        return 0.0;
    if (time <= knots.front().time)
        return knots.front().value;
    if (time >= knots.back().time)
        return knots.back().value;
    // first knot strictly past `time`; the knot before it starts the segment
    auto it = std::upper_bound(knots.begin(), knots.end(), time,
                               [](double t, const Knot &k) { return t < k.time; });
    const Knot &hi = *it;
    const Knot &lo = *(it - 1);
    if (hi.time == lo.time)
        return hi.value;
    const double frac = (time - lo.time) / (hi.time - lo.time);
    return lo.value * (1.0 - frac) + hi.value * frac;
}

PresetKind parse_preset(const std::string &name)
{
    if (name == "crossing")
        return PresetKind::crossing;
    if (name == "convoy-obstructed")
        return PresetKind::convoy_obstructed;
    if (name == "tunnel-like")
        return PresetKind::tunnel_like;
    if (name == "two-path-static")
        return PresetKind::two_path_static;
    throw config_error("unknown-preset", "unknown scenario preset '" + name + "'");
}

std::string preset_name(PresetKind kind)
{
    switch (kind)
    {
    case PresetKind::crossing:
        return "crossing";
    case PresetKind::convoy_obstructed:
        return "convoy-obstructed";
    case PresetKind::tunnel_like:
        return "tunnel-like";
    case PresetKind::two_path_static:
        return "two-path-static";
    }
    return "unknown";
}

ScenarioPreset ScenarioPreset::named(const std::string &name)
{
    ScenarioPreset preset;
    preset.kind = parse_preset(name);
    return preset;
}

namespace
{

constexpr int kRegionExtent = 128; // time extent the scenario scripts are staged on

std::vector<PathSpec> crossing_paths(const GridParams &grid, SplitMix &rng)
{
    const double duration = grid.duration();
    const int regions = static_cast<int>(grid.num_snapshots) / kRegionExtent - 1;
    if (regions < 8)
        throw config_error("preset-too-short",
                           "crossing preset needs at least 9*128 snapshots to stage its run");

    // Doppler tent of the line of sight: accelerate towards ~300 Hz, brake
    // back towards standstill at the crossing.
    const int peak_region = std::max(2, static_cast<int>(std::lround(0.55 * regions)));
    std::vector<double> tent(static_cast<std::size_t>(regions));
    for (int k = 1; k <= regions; ++k)
    {
        double v;
        if (k <= peak_region)
            v = 300.0 * static_cast<double>(k - 1) / static_cast<double>(peak_region - 1);
        else
            v = 300.0 * static_cast<double>(regions - k) / static_cast<double>(regions - peak_region);
        tent[static_cast<std::size_t>(k - 1)] = v;
    }

    std::vector<PathSpec> paths;
    PathSpec los;
    los.amplitude = {1.0, 0.0};
    los.delay = Trajectory{{{0.0, 500e-9}, {duration, 250e-9}}};
    los.doppler = region_steps(grid, kRegionExtent, tent);
    paths.push_back(los);

    // Reflectors birth around the crossing as +-Doppler pairs, one pair per
    // region with growing magnitude: symmetric pairs add Doppler variance
    // without dragging the power-weighted mean, so the spread rises
    // monotonically over the transition window.
    const int pair_groups = 4;
    const int transition_region = peak_region;
    for (int i = 0; i < pair_groups; ++i)
    {
        const double magnitude = 200.0 + 130.0 * i + rng.uniform(0.0, 40.0);
        const int birth_region = transition_region + i;
        for (double sign : {1.0, -1.0})
        {
            PathSpec p;
            p.doppler = Trajectory::constant(sign * magnitude);
            p.delay = Trajectory::constant(rng.uniform(600e-9, 1400e-9));
            p.amplitude = {std::pow(10.0, -8.0 / 20.0), 0.0};
            p.birth = (static_cast<double>(birth_region) * kRegionExtent - kRegionExtent / 2) *
                      grid.snapshot_interval;
            paths.push_back(p);
        }
    }
    return paths;
}

std::vector<PathSpec> convoy_paths(const GridParams &grid, SplitMix &rng)
{
    const double duration = grid.duration();
    std::vector<PathSpec> paths;

    // 0 Hz line of sight, dropped by 15 dB while a truck blocks it.
    const double obstruction_gain = std::pow(10.0, -15.0 / 20.0);
    const double obstruction_start = 0.3 * duration;
    const double obstruction_end = 0.6 * duration;
    PathSpec before;
    before.amplitude = {1.0, 0.0};
    before.delay = Trajectory::constant(400e-9);
    before.death = obstruction_start;
    paths.push_back(before);
    PathSpec during = before;
    during.amplitude = {obstruction_gain, 0.0};
    during.birth = obstruction_start;
    during.death = obstruction_end;
    paths.push_back(during);
    PathSpec after = before;
    after.birth = obstruction_end;
    after.death = std::numeric_limits<double>::infinity();
    paths.push_back(after);

    // oncoming traffic: short-lived, strongly Doppler-shifted, weak
    const int oncoming_count = rng.uniform_int(3, 5);
    for (int i = 0; i < oncoming_count; ++i)
    {
        PathSpec p;
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        p.doppler = Trajectory::constant(sign * rng.uniform(400.0, 1200.0));
        p.delay = Trajectory::constant(rng.uniform(500e-9, 1200e-9));
        p.amplitude = {std::pow(10.0, -18.0 / 20.0), 0.0};
        p.birth = rng.uniform(0.0, 0.8) * duration;
        p.death = p.birth + 0.15 * duration;
        paths.push_back(p);
    }
    return paths;
}

std::vector<PathSpec> tunnel_paths(const GridParams &grid, SplitMix &rng)
{
    (void)grid;
    std::vector<PathSpec> paths;
    PathSpec los;
    los.amplitude = {1.0, 0.0};
    los.delay = Trajectory::constant(250e-9);
    paths.push_back(los);

    // dense late cluster with an exponentially decaying tail
    const int cluster_count = 12;
    for (int i = 0; i < cluster_count; ++i)
    {
        PathSpec p;
        const double tau = 300e-9 + 90e-9 * i;
        const double power = 0.25 * std::exp(-(tau - 300e-9) / 400e-9);
        p.amplitude = {std::sqrt(power), 0.0};
        p.delay = Trajectory::constant(tau);
        p.doppler = Trajectory::constant(rng.uniform(-120.0, 120.0));
        paths.push_back(p);
    }
    return paths;
}

std::vector<PathSpec> two_path_paths(const ScenarioPreset &preset)
{
    if (!(preset.two_path_split > 0.0) || !(preset.two_path_split < 1.0))
        throw config_error("preset-params", "two-path power split must lie in (0, 1)");
    std::vector<PathSpec> paths(2);
    paths[0].amplitude = {std::sqrt(preset.two_path_split), 0.0};
    paths[0].delay = Trajectory::constant(preset.two_path_delay1);
    paths[1].amplitude = {std::sqrt(1.0 - preset.two_path_split), 0.0};
    paths[1].delay = Trajectory::constant(preset.two_path_delay2);
    return paths;
}

} // namespace

std::vector<PathSpec> preset_paths(const ScenarioPreset &preset, const GridParams &grid,
                                   std::uint64_t seed)
{
    SplitMix rng(mix64(seed ^ (0xA5C1ull + static_cast<std::uint64_t>(preset.kind))));
    switch (preset.kind)
    {
    case PresetKind::crossing:
        return crossing_paths(grid, rng);
    case PresetKind::convoy_obstructed:
        return convoy_paths(grid, rng);
    case PresetKind::tunnel_like:
        return tunnel_paths(grid, rng);
    case PresetKind::two_path_static:
        return two_path_paths(preset);
    }
    throw config_error("unknown-preset", "unhandled preset kind");
}

std::vector<PathSpec> preset(const std::string &name, const GridParams &grid, std::uint64_t seed)
{
    return preset_paths(ScenarioPreset::named(name), grid, seed);
}

namespace detail
{

std::complex<double> noise_sample(std::uint64_t seed, std::uint32_t link, std::uint32_t m,
                                  std::uint32_t q)
{
    std::uint64_t h = mix64(seed ^ 0x6C62272E07BB0142ull);
    h = mix64(h ^ (static_cast<std::uint64_t>(link) * 0x100000001B3ull));
    h = mix64(h ^ (static_cast<std::uint64_t>(m) * 0xC2B2AE3D27D4EB4Full));
    h = mix64(h ^ (static_cast<std::uint64_t>(q) * 0x165667B19E3779F9ull));
    const double u1 = to_unit(mix64(h ^ 0x01ull));
    const double u2 = to_unit(mix64(h ^ 0x02ull));
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

} // namespace detail

TimeVariantFrequencyResponse synthesize(const std::vector<PathSpec> &paths, const GridParams &grid,
                                        double noise_power, std::uint64_t seed)
{
    if (noise_power < 0.0 || !std::isfinite(noise_power))
        throw config_error("noise-power", "noise power must be finite and non-negative");
    const double delay_limit = 1.0 / grid.freq_bin;
    const double doppler_limit = 0.5 / grid.snapshot_interval;
    for (const auto &path : paths)
    {
        for (const auto &knot : path.delay.knots)
            if (knot.value < 0.0 || knot.value >= delay_limit)
                throw config_error("path-bounds", "path delay outside [0, 1/f_s)");
        for (const auto &knot : path.doppler.knots)
            if (std::abs(knot.value) >= doppler_limit)
                throw config_error("path-bounds", "path Doppler outside (-1/(2 t_s), 1/(2 t_s))");
        if (!(std::isfinite(path.amplitude.real()) && std::isfinite(path.amplitude.imag())))
            throw config_error("path-bounds", "path amplitude must be finite");
    }

    const std::uint32_t snapshots = grid.num_snapshots;
    const std::uint32_t bins = grid.num_freq_bins;
    const double t_s = grid.snapshot_interval;
    const double f_s = grid.freq_bin;
    constexpr double two_pi = 2.0 * std::numbers::pi;

    // Deterministic multipath part, shared by all links.
    Eigen::MatrixXcd base = Eigen::MatrixXcd::Zero(snapshots, bins);
    for (std::uint32_t m = 0; m < snapshots; ++m)
    {
        const double t = t_s * static_cast<double>(m);
        for (const auto &path : paths)
        {
            if (!path.alive(t))
                continue;
            const double tau = path.delay.at(t);
            const double nu = path.doppler.at(t);
            const std::complex<double> gain =
                path.amplitude * std::polar(1.0, two_pi * nu * t);
            const double phase_step = -two_pi * tau * f_s;
            for (std::uint32_t q = 0; q < bins; ++q)
                base(m, q) += gain * std::polar(1.0, phase_step * static_cast<double>(q));
        }
    }

    std::vector<Eigen::MatrixXcd> links(grid.num_links);
    const double noise_scale = std::sqrt(noise_power / 2.0);
    for (std::uint32_t l = 1; l <= grid.num_links; ++l)
    {
        Eigen::MatrixXcd samples = base;
        if (noise_power > 0.0)
            for (std::uint32_t m = 0; m < snapshots; ++m)
                for (std::uint32_t q = 0; q < bins; ++q)
                    samples(m, q) += noise_scale * detail::noise_sample(seed, l, m, q);
        links[l - 1] = std::move(samples);
    }
    return TimeVariantFrequencyResponse(grid, std::move(links));
}

} // namespace lsfkit
