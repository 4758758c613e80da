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

#include "lsfkit/lsf.hpp"
#include "lsfkit/errors.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <numbers>
#include <string>

namespace lsfkit
{

RegionSpec::RegionSpec(int m, int n) : time_extent(m), freq_extent(n)
{
    if (m < 2 || n < 2 || m % 2 != 0 || n % 2 != 0)
        throw config_error("region-spec", "region extents must be even and at least 2, got " +
                                              std::to_string(m) + "x" + std::to_string(n));
}

double delay_resolution(const GridParams &grid, const RegionSpec &region)
{
    return static_cast<double>(grid.num_freq_bins) / (grid.bandwidth * region.freq_extent);
}

double doppler_resolution(const GridParams &grid, const RegionSpec &region)
{
    return 1.0 / (grid.snapshot_interval * region.time_extent);
}

double region_time_extent(const GridParams &grid, const RegionSpec &region)
{
    return grid.snapshot_interval * region.time_extent;
}

double region_freq_extent(const GridParams &grid, const RegionSpec &region)
{
    return grid.freq_bin * region.freq_extent;
}

int region_count(int total, int extent)
{
    return total / extent - 1;
}

LocalScatteringFunction::LocalScatteringFunction(GridParams grid, RegionSpec region,
                                                 int num_time_regions, int num_freq_regions,
                                                 std::vector<Eigen::MatrixXd> region_values)
    : grid_(grid), region_(region), num_time_regions_(num_time_regions),
      num_freq_regions_(num_freq_regions), values_(std::move(region_values))
{
    if (num_time_regions_ < 1 || num_freq_regions_ < 1)
        throw config_error("lsf-shape", "at least one stationarity region required");
    if (values_.size() != static_cast<std::size_t>(num_time_regions_) * num_freq_regions_)
        throw config_error("lsf-shape", "region count does not match K_t * K_f");
    for (const auto &slice : values_)
    {
        if (slice.rows() != region_.freq_extent || slice.cols() != region_.time_extent)
            throw config_error("lsf-shape", "region slice must be N x M");
        if (!slice.allFinite() || (slice.array() < 0.0).any())
            throw numeric_error("lsf-values", "scattering function values must be finite and non-negative");
    }
}

const Eigen::MatrixXd &LocalScatteringFunction::at(int k_t, int k_f) const
{
    if (k_t < 1 || k_t > num_time_regions_ || k_f < 1 || k_f > num_freq_regions_)
        throw config_error("region-index", "region index (" + std::to_string(k_t) + ", " +
                                               std::to_string(k_f) + ") outside the tiling");
    return values_[static_cast<std::size_t>(k_t - 1) * num_freq_regions_ + (k_f - 1)];
}

LocalScatteringFunction estimate_lsf(const TimeVariantFrequencyResponse &tvfr, int link,
                                     const RegionSpec &region, const TaperSet &tapers)
{
    const GridParams &grid = tvfr.grid();
    const int m_extent = region.time_extent;
    const int n_extent = region.freq_extent;
    if (tapers.time_extent() != m_extent || tapers.freq_extent() != n_extent)
        throw config_error("taper-region-mismatch",
                           "taper support " + std::to_string(tapers.time_extent()) + "x" +
                               std::to_string(tapers.freq_extent()) + " does not match region " +
                               std::to_string(m_extent) + "x" + std::to_string(n_extent));
    if (static_cast<int>(grid.num_snapshots) < 2 * m_extent ||
        static_cast<int>(grid.num_freq_bins) < 2 * n_extent)
        throw config_error("region-too-large",
                           "need at least 2M snapshots and 2N frequency bins for one interior region");

    const Eigen::MatrixXcd &samples = tvfr.link(link);
    const int k_t_count = region_count(static_cast<int>(grid.num_snapshots), m_extent);
    const int k_f_count = region_count(static_cast<int>(grid.num_freq_bins), n_extent);
    const int num_windows = tapers.count();

    // 2-D transform as two dense complex products: rows carry
    // exp(-j*2*pi*p*m'/M), columns exp(+j*2*pi*n*q'/N).
    using Cplx = std::complex<double>;
    Eigen::MatrixXcd time_dft(m_extent, m_extent); // [p_idx, a], p = p_idx - M/2, m' = a - M/2
    for (int p_idx = 0; p_idx < m_extent; ++p_idx)
        for (int a = 0; a < m_extent; ++a)
        {
            const double phase = -2.0 * std::numbers::pi * (p_idx - m_extent / 2) *
                                 (a - m_extent / 2) / static_cast<double>(m_extent);
            time_dft(p_idx, a) = Cplx(std::cos(phase), std::sin(phase));
        }
    Eigen::MatrixXcd freq_dft(n_extent, n_extent); // [b, n], q' = b - N/2
    for (int b = 0; b < n_extent; ++b)
        for (int n = 0; n < n_extent; ++n)
        {
            const double phase = 2.0 * std::numbers::pi * n * (b - n_extent / 2) /
                                 static_cast<double>(n_extent);
            freq_dft(b, n) = Cplx(std::cos(phase), std::sin(phase));
        }

    std::vector<Eigen::MatrixXcd> windows_cplx;
    windows_cplx.reserve(tapers.windows.size());
    for (const auto &w : tapers.windows)
        windows_cplx.push_back(w.cast<Cplx>());

    std::vector<Eigen::MatrixXd> slices;
    slices.reserve(static_cast<std::size_t>(k_t_count) * k_f_count);
    Eigen::MatrixXcd block(m_extent, n_extent), windowed(m_extent, n_extent),
        transformed(m_extent, n_extent);
    for (int k_t = 1; k_t <= k_t_count; ++k_t)
        for (int k_f = 1; k_f <= k_f_count; ++k_f)
        {
            block = samples.block(k_t * m_extent - m_extent / 2, k_f * n_extent - n_extent / 2,
                                  m_extent, n_extent);
            Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(m_extent, n_extent); // [p_idx, n]
            for (const auto &window : windows_cplx)
            {
                windowed = block.cwiseProduct(window);
                transformed.noalias() = time_dft * windowed * freq_dft;
                acc += transformed.cwiseAbs2();
            }
            slices.push_back((acc / static_cast<double>(num_windows)).transpose()); // [n, p_idx]
        }
    return LocalScatteringFunction(grid, region, k_t_count, k_f_count, std::move(slices));
}

LocalScatteringFunction combine_links(const std::vector<LocalScatteringFunction> &lsfs,
                                      int num_links)
{
    if (lsfs.empty() || num_links != static_cast<int>(lsfs.size()))
        throw config_error("combine-links", "expected " + std::to_string(num_links) +
                                                " estimates, got " + std::to_string(lsfs.size()));
    const LocalScatteringFunction &first = lsfs.front();
    for (const auto &lsf : lsfs)
    {
        if (lsf.num_time_regions() != first.num_time_regions() ||
            lsf.num_freq_regions() != first.num_freq_regions() ||
            lsf.region().time_extent != first.region().time_extent ||
            lsf.region().freq_extent != first.region().freq_extent)
            throw config_error("combine-links", "per-link estimates must share shapes and regions");
    }
    // pairwise accumulation: exact for identical inputs when L is a power of
    // two, and schedule-independent by construction
    std::vector<Eigen::MatrixXd> mean(static_cast<std::size_t>(first.num_regions()));
    for (int r = 0; r < first.num_regions(); ++r)
    {
        std::vector<Eigen::MatrixXd> level;
        level.reserve(lsfs.size());
        for (const auto &lsf : lsfs)
            level.push_back(lsf.slice(r));
        while (level.size() > 1)
        {
            std::vector<Eigen::MatrixXd> next;
            next.reserve((level.size() + 1) / 2);
            for (std::size_t i = 0; i + 1 < level.size(); i += 2)
                next.push_back(level[i] + level[i + 1]);
            if (level.size() % 2 == 1)
                next.push_back(level.back());
            level = std::move(next);
        }
        mean[static_cast<std::size_t>(r)] = level.front() / static_cast<double>(num_links);
    }
    return LocalScatteringFunction(first.grid(), first.region(), first.num_time_regions(),
                                   first.num_freq_regions(), std::move(mean));
}

namespace
{

template <typename T> void put_le(std::string &out, T value)
{
    static_assert(std::is_trivially_copyable_v<T>);
    std::array<unsigned char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes.begin(), bytes.end());
    out.append(reinterpret_cast<const char *>(bytes.data()), sizeof(T));
}

} // namespace

void write_lsf(const LocalScatteringFunction &lsf, const std::filesystem::path &path)
{
    std::string bytes;
    bytes.append("LSF00001", 8);
    put_le(bytes, static_cast<std::uint32_t>(lsf.num_time_regions()));
    put_le(bytes, static_cast<std::uint32_t>(lsf.num_freq_regions()));
    put_le(bytes, static_cast<std::uint32_t>(lsf.region().freq_extent));
    put_le(bytes, static_cast<std::uint32_t>(lsf.region().time_extent));
    put_le(bytes, lsf.delay_bin());
    put_le(bytes, lsf.doppler_bin());
    for (int r = 0; r < lsf.num_regions(); ++r)
    {
        const Eigen::MatrixXd &slice = lsf.slice(r);
        for (int n = 0; n < slice.rows(); ++n)
            for (int p = 0; p < slice.cols(); ++p)
                put_le(bytes, static_cast<float>(slice(n, p)));
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw input_error("output-unwritable", "cannot open " + path.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw input_error("output-unwritable", "short write to " + path.string());
}

} // namespace lsfkit
