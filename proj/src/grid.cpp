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

#include "lsfkit/grid.hpp"
#include "lsfkit/errors.hpp"

#include <cmath>
#include <string>

namespace lsfkit
{

GridParams::GridParams(double t_s, double f_s, double b, std::uint32_t s, std::uint32_t q,
                       std::uint32_t l, double f_c)
    : snapshot_interval(t_s), freq_bin(f_s), bandwidth(b), num_snapshots(s), num_freq_bins(q),
      num_links(l), carrier(f_c)
{
    if (!(t_s > 0.0) || !(f_s > 0.0) || !(b > 0.0))
        throw config_error("grid-params", "snapshot interval, frequency bin and bandwidth must be positive");
    if (s < 1 || q < 1 || l < 1)
        throw config_error("grid-params", "snapshot, frequency-bin and link counts must be at least 1");
    if (!std::isfinite(t_s) || !std::isfinite(f_s) || !std::isfinite(b) || !std::isfinite(f_c))
        throw config_error("grid-params", "grid parameters must be finite");
    double err = std::abs(f_s * static_cast<double>(q) - b) / b;
    if (err > 1e-12)
        throw config_error("grid-params", "freq_bin * num_freq_bins must equal bandwidth (relative error " +
                                              std::to_string(err) + ")");
}

GridParams GridParams::measurement_defaults(std::uint32_t num_snapshots, std::uint32_t num_links)
{
    const double b = 240e6;
    const std::uint32_t q = 769;
    return GridParams(307.2e-6, b / q, b, num_snapshots, q, num_links, 5.6e9);
}

int link_index(int n_tx, int n_rx)
{
    if (n_tx < 1 || n_tx > 4 || n_rx < 1 || n_rx > 4)
        throw config_error("link-index", "antenna indices must lie in 1..4");
    return 4 * (n_tx - 1) + (5 - n_rx);
}

} // namespace lsfkit
