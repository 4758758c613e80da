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

#ifndef LSFKIT_GRID_HPP
#define LSFKIT_GRID_HPP

#include <cstdint>

namespace lsfkit
{

/// Sampling grid of a recorded time-variant frequency response.
///
/// A response is sampled at S snapshots spaced snapshot_interval seconds
/// apart, each holding Q frequency bins spaced freq_bin Hz apart across
/// bandwidth B, for L antenna links. freq_bin = bandwidth / num_freq_bins
/// must hold to a relative 1e-12; the constructor enforces it.
struct GridParams
{
    double snapshot_interval = 0.0; // t_s  [s]
    double freq_bin = 0.0;          // f_s  [Hz]
    double bandwidth = 0.0;         // B    [Hz]
    std::uint32_t num_snapshots = 0;
    std::uint32_t num_freq_bins = 0;
    std::uint32_t num_links = 0;
    double carrier = 0.0; // f_c  [Hz]

    GridParams() = default;

    GridParams(double t_s, double f_s, double b, std::uint32_t s, std::uint32_t q,
               std::uint32_t l, double f_c);

    /// Grid with the measurement defaults of the reference sounder setup:
    /// t_s = 307.2 us, B = 240 MHz, Q = 769, L = 16, f_c = 5.6 GHz.
    static GridParams measurement_defaults(std::uint32_t num_snapshots, std::uint32_t num_links = 16);

    double duration() const { return snapshot_interval * num_snapshots; }
};

/// Maps transmit/receive antenna indices (1..4 each) onto the link index
/// 1..16 used by the sounder's time-multiplexed recording order.
int link_index(int n_tx, int n_rx);

} // namespace lsfkit

#endif
