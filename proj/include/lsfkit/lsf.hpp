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

#ifndef LSFKIT_LSF_HPP
#define LSFKIT_LSF_HPP

#include "lsfkit/grid.hpp"
#include "lsfkit/taper.hpp"
#include "lsfkit/tvfr.hpp"

#include <Eigen/Dense>

#include <filesystem>
#include <vector>

namespace lsfkit
{

/// Extent of one stationarity region: M snapshots in time by N bins in
/// frequency. Both must be even. Derived bin scales on a grid:
/// delay bin tau_s = Q / (B*N) seconds, Doppler bin nu_s = 1 / (t_s*M) Hz.
struct RegionSpec
{
    int time_extent = 0; // M, snapshots
    int freq_extent = 0; // N, frequency bins

    RegionSpec() = default;
    RegionSpec(int m, int n);
};

double delay_resolution(const GridParams &grid, const RegionSpec &region);   // tau_s [s]
double doppler_resolution(const GridParams &grid, const RegionSpec &region); // nu_s  [Hz]
double region_time_extent(const GridParams &grid, const RegionSpec &region); // M*t_s [s]
double region_freq_extent(const GridParams &grid, const RegionSpec &region); // N*f_s [Hz]

/// Number of stationarity regions tiling S snapshots (floor(S/M) - 1); region
/// indices are 1-based and each region is centred at absolute index k*extent.
int region_count(int total, int extent);

/// Delay-Doppler power spectrum per stationarity region.
///
/// One non-negative N x M matrix per region (k_t, k_f), rows indexed by the
/// delay bin n in 0..N-1 and columns by the Doppler bin p stored ascending
/// from -M/2 to M/2-1 (column c holds p = c - M/2).
class LocalScatteringFunction
{
  public:
    LocalScatteringFunction(GridParams grid, RegionSpec region, int num_time_regions,
                            int num_freq_regions, std::vector<Eigen::MatrixXd> region_values);

    const GridParams &grid() const noexcept { return grid_; }
    const RegionSpec &region() const noexcept { return region_; }
    int num_time_regions() const noexcept { return num_time_regions_; }
    int num_freq_regions() const noexcept { return num_freq_regions_; }
    int num_regions() const noexcept { return num_time_regions_ * num_freq_regions_; }

    /// Region slice; k_t in 1..K_t, k_f in 1..K_f.
    const Eigen::MatrixXd &at(int k_t, int k_f) const;
    /// Region slice by flat index r = (k_t-1)*K_f + (k_f-1).
    const Eigen::MatrixXd &slice(int r) const { return values_.at(static_cast<std::size_t>(r)); }

    double delay_bin() const { return delay_resolution(grid_, region_); }   // tau_s
    double doppler_bin() const { return doppler_resolution(grid_, region_); } // nu_s

  private:
    GridParams grid_;
    RegionSpec region_;
    int num_time_regions_ = 0;
    int num_freq_regions_ = 0;
    std::vector<Eigen::MatrixXd> values_;
};

/// Multitaper estimate of the local scattering function of one link.
///
/// For every region (k_t, k_f) the M x N block of H at absolute indices
/// m = k_t*M + m', q = k_f*N + q' (m' in [-M/2, M/2), q' in [-N/2, N/2)) is
/// windowed with each 2-D taper, transformed with
/// sum exp(-j*2*pi*(p*m'/M - n*q'/N)), and the squared magnitudes are
/// averaged over the window set. Requires taper extents equal to the region
/// extents, S >= 2M and Q >= 2N.
LocalScatteringFunction estimate_lsf(const TimeVariantFrequencyResponse &tvfr, int link,
                                     const RegionSpec &region, const TaperSet &tapers);

/// Elementwise mean of per-link estimates, mimicking a combined
/// omnidirectional pattern. All inputs must share shapes, grids and regions.
LocalScatteringFunction combine_links(const std::vector<LocalScatteringFunction> &lsfs,
                                      int num_links);

// Binary dump, little-endian:
//   magic   "LSF00001"                       8 bytes
//   u32     K_t, K_f, N, M
//   f64     tau_s, nu_s
//   payload float32 values in [k_t, k_f, n, p] order, p ascending from -M/2.
void write_lsf(const LocalScatteringFunction &lsf, const std::filesystem::path &path);

} // namespace lsfkit

#endif
