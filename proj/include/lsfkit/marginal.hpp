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

#ifndef LSFKIT_MARGINAL_HPP
#define LSFKIT_MARGINAL_HPP

#include "lsfkit/lsf.hpp"

#include <Eigen/Dense>

#include <filesystem>
#include <utility>

namespace lsfkit
{

enum class MarginalKind
{
    delay,  // power delay profile, bins n in 0..N-1, scale tau_s
    doppler // Doppler spectral density, bins p in -M/2..M/2-1, scale nu_s
};

/// Per-region projection of the scattering function onto one dispersion axis.
/// Row r = (k_t-1)*K_f + (k_f-1) holds the profile of region (k_t, k_f).
struct MarginalProfile
{
    MarginalKind kind = MarginalKind::delay;
    int num_time_regions = 0;
    int num_freq_regions = 0;
    Eigen::MatrixXd values; // regions x bins, non-negative
    double bin_scale = 0.0; // tau_s [s] or nu_s [Hz]

    int bins() const noexcept { return static_cast<int>(values.cols()); }

    /// Physical value of a bin: n*tau_s for delay, (c - M/2)*nu_s for Doppler.
    double bin_value(int bin) const
    {
        return kind == MarginalKind::delay ? bin * bin_scale
                                           : (bin - bins() / 2) * bin_scale;
    }
};

MarginalProfile pdp(const LocalScatteringFunction &lsf); // (1/M) sum over p
MarginalProfile dsd(const LocalScatteringFunction &lsf); // (1/N) sum over n

enum class FloorStat
{
    mean,
    median
};

/// Per-region noise floor and threshold applied to it.
struct ThresholdReport
{
    Eigen::MatrixXd floor;        // K_t x K_f, noise floor power
    Eigen::MatrixXd threshold;    // floor * 10^(guard_db/10)
    Eigen::MatrixXi bins_retained; // cells at or above the threshold
};

/// Zeroes every cell below 10^(guard_db/10) times the region's noise floor,
/// the floor being the mean (or median) cell value over delay bins with
/// n*tau_s strictly greater than noise_delay_floor seconds. Thresholding is
/// per stationarity region. Fails if no delay bin lies beyond the floor
/// window.
std::pair<LocalScatteringFunction, ThresholdReport>
threshold_lsf(const LocalScatteringFunction &lsf, double guard_db = 5.0,
              double noise_delay_floor = 2e-6, FloorStat stat = FloorStat::mean);

/// CSV rows (k_t, k_f, bin, bin_value, power), one per region and bin.
void write_marginal_csv(const MarginalProfile &profile, const std::filesystem::path &path);

} // namespace lsfkit

#endif
