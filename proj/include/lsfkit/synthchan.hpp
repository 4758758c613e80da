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

#ifndef LSFKIT_SYNTHCHAN_HPP
#define LSFKIT_SYNTHCHAN_HPP

#include "lsfkit/grid.hpp"
#include "lsfkit/tvfr.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace lsfkit
{

/// Piecewise-linear trajectory: linear interpolation between knots sorted by
/// time, held constant beyond the first/last knot. Coincident knot times
/// create a step (the later knot wins at the boundary).
struct Trajectory
{
    struct Knot
    {
        double time;
        double value;
    };
    std::vector<Knot> knots;

    static Trajectory constant(double value) { return Trajectory{{{0.0, value}}}; }
    double at(double time) const;
};

/// One multipath component of the synthetic channel: a complex amplitude with
/// delay and Doppler trajectories, alive on [birth, death). Delays must stay
/// inside the unambiguous window [0, 1/f_s) and Doppler shifts inside
/// (-1/(2 t_s), 1/(2 t_s)).
struct PathSpec
{
    std::complex<double> amplitude{1.0, 0.0};
    Trajectory delay = Trajectory::constant(0.0);   // tau_p(t) [s]
    Trajectory doppler = Trajectory::constant(0.0); // nu_p(t) [Hz]
    double birth = 0.0;
    double death = std::numeric_limits<double>::infinity();

    bool alive(double time) const { return time >= birth && time < death; }
};

enum class PresetKind
{
    crossing,
    convoy_obstructed,
    tunnel_like,
    two_path_static
};

PresetKind parse_preset(const std::string &name);
std::string preset_name(PresetKind kind);

/// Scenario-flavoured path generator configuration. Defaults reproduce the
/// qualitative structure of the scenarios the presets are named after; the
/// two-path knobs drive the static validation pair.
struct ScenarioPreset
{
    PresetKind kind = PresetKind::two_path_static;
    double noise_power = 1e-3; // relative to unit total path power

    // two-path-static knobs
    double two_path_delay1 = 500e-9;  // [s]
    double two_path_delay2 = 600e-9;  // [s]
    double two_path_split = 0.5;      // power fraction of the first path

    static ScenarioPreset named(const std::string &name);
};

/// Deterministic path list for a preset on the given grid.
std::vector<PathSpec> preset_paths(const ScenarioPreset &preset, const GridParams &grid,
                                   std::uint64_t seed);
std::vector<PathSpec> preset(const std::string &name, const GridParams &grid, std::uint64_t seed);

/// Tapped multipath synthesis: for each link
///   H[m, q] = sum_p a_p * exp(j*2*pi*(nu_p(t)*t - tau_p(t)*f_s*q)),  t = t_s*m,
/// over paths alive at t, plus circularly-symmetric complex white noise of
/// the given power. The noise stream is keyed by (seed, link, m, q), so the
/// result is bitwise independent of evaluation order.
TimeVariantFrequencyResponse synthesize(const std::vector<PathSpec> &paths, const GridParams &grid,
                                        double noise_power, std::uint64_t seed);

namespace detail
{
/// Counter-based unit complex Gaussian pair for sample (link, m, q).
std::complex<double> noise_sample(std::uint64_t seed, std::uint32_t link, std::uint32_t m,
                                  std::uint32_t q);
} // namespace detail

} // namespace lsfkit

#endif
