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

#include "lsfkit/tvfr.hpp"
#include "lsfkit/errors.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

namespace lsfkit
{

namespace
{

constexpr char kMagic[8] = {'T', 'V', 'F', 'R', '0', '0', '0', '1'};

// Little-endian scalar encode/decode. The container is defined little-endian
// regardless of host order.
template <typename T> void put_le(std::string &out, T value)
{
    static_assert(std::is_trivially_copyable_v<T>);
    std::array<unsigned char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes.begin(), bytes.end());
    out.append(reinterpret_cast<const char *>(bytes.data()), sizeof(T));
}

template <typename T> T get_le(const unsigned char *p)
{
    std::array<unsigned char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), p, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes.begin(), bytes.end());
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

constexpr std::size_t kHeaderBytes = 8 + 3 * 4 + 4 * 8;

} // namespace

TimeVariantFrequencyResponse::TimeVariantFrequencyResponse(GridParams grid,
                                                           std::vector<Eigen::MatrixXcd> link_samples)
    : grid_(grid), links_(std::move(link_samples))
{
    if (links_.size() != grid_.num_links)
        throw input_error("shape-mismatch", "expected " + std::to_string(grid_.num_links) +
                                                " links, got " + std::to_string(links_.size()));
    for (std::size_t l = 0; l < links_.size(); ++l)
    {
        const auto &samples = links_[l];
        if (samples.rows() != static_cast<Eigen::Index>(grid_.num_snapshots) ||
            samples.cols() != static_cast<Eigen::Index>(grid_.num_freq_bins))
            throw input_error("shape-mismatch", "link " + std::to_string(l + 1) + " has shape " +
                                                    std::to_string(samples.rows()) + "x" +
                                                    std::to_string(samples.cols()) + ", expected " +
                                                    std::to_string(grid_.num_snapshots) + "x" +
                                                    std::to_string(grid_.num_freq_bins));
        if (!samples.allFinite())
            throw input_error("non-finite-samples", "link " + std::to_string(l + 1) +
                                                        " contains NaN or infinite samples");
    }
}

const Eigen::MatrixXcd &TimeVariantFrequencyResponse::link(int link_index) const
{
    if (link_index < 1 || link_index > num_links())
        throw config_error("link-index", "link index " + std::to_string(link_index) +
                                             " outside 1.." + std::to_string(num_links()));
    return links_[static_cast<std::size_t>(link_index - 1)];
}

TimeVariantFrequencyResponse read_container(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw input_error("input-not-found", "cannot open " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() < kHeaderBytes)
        throw input_error("truncated-payload", "file shorter than container header");
    const auto *p = reinterpret_cast<const unsigned char *>(bytes.data());
    if (std::memcmp(p, kMagic, 8) != 0)
        throw input_error("bad-magic", "magic bytes do not identify a TVFR container");
    p += 8;
    const std::uint32_t num_links = get_le<std::uint32_t>(p);
    const std::uint32_t num_snapshots = get_le<std::uint32_t>(p + 4);
    const std::uint32_t num_bins = get_le<std::uint32_t>(p + 8);
    const double t_s = get_le<double>(p + 12);
    const double f_s = get_le<double>(p + 20);
    const double bandwidth = get_le<double>(p + 28);
    const double carrier = get_le<double>(p + 36);

    GridParams grid;
    try
    {
        grid = GridParams(t_s, f_s, bandwidth, num_snapshots, num_bins, num_links, carrier);
    }
    catch (const error &e)
    {
        throw input_error("bad-header", std::string("invalid grid header: ") + e.what());
    }

    const std::uint64_t sample_count = static_cast<std::uint64_t>(num_links) * num_snapshots * num_bins;
    const std::uint64_t expected = kHeaderBytes + sample_count * 8;
    if (bytes.size() < expected)
        throw input_error("truncated-payload",
                          "payload holds fewer than " + std::to_string(sample_count) + " complex samples");
    if (bytes.size() > expected)
        throw input_error("shape-mismatch", "payload longer than the declared sample count");

    const unsigned char *payload = reinterpret_cast<const unsigned char *>(bytes.data()) + kHeaderBytes;
    std::vector<Eigen::MatrixXcd> links(num_links);
    std::uint64_t offset = 0;
    for (std::uint32_t l = 0; l < num_links; ++l)
    {
        Eigen::MatrixXcd samples(num_snapshots, num_bins);
        for (std::uint32_t m = 0; m < num_snapshots; ++m)
            for (std::uint32_t q = 0; q < num_bins; ++q)
            {
                const float re = get_le<float>(payload + offset);
                const float im = get_le<float>(payload + offset + 4);
                offset += 8;
                samples(m, q) = std::complex<double>(re, im);
            }
        if (!samples.allFinite())
            throw input_error("non-finite-samples",
                              "link " + std::to_string(l + 1) + " contains NaN or infinite samples");
        links[l] = std::move(samples);
    }
    return TimeVariantFrequencyResponse(grid, std::move(links));
}

void write_container(const TimeVariantFrequencyResponse &tvfr, const std::filesystem::path &path)
{
    const GridParams &grid = tvfr.grid();
    std::string bytes;
    bytes.reserve(kHeaderBytes + static_cast<std::size_t>(grid.num_links) * grid.num_snapshots *
                                     grid.num_freq_bins * 8);
    bytes.append(kMagic, 8);
    put_le(bytes, grid.num_links);
    put_le(bytes, grid.num_snapshots);
    put_le(bytes, grid.num_freq_bins);
    put_le(bytes, grid.snapshot_interval);
    put_le(bytes, grid.freq_bin);
    put_le(bytes, grid.bandwidth);
    put_le(bytes, grid.carrier);
    for (std::uint32_t l = 1; l <= grid.num_links; ++l)
    {
        const Eigen::MatrixXcd &samples = tvfr.link(static_cast<int>(l));
        for (std::uint32_t m = 0; m < grid.num_snapshots; ++m)
            for (std::uint32_t q = 0; q < grid.num_freq_bins; ++q)
            {
                const std::complex<double> v = samples(m, q);
                put_le(bytes, static_cast<float>(v.real()));
                put_le(bytes, static_cast<float>(v.imag()));
            }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw input_error("output-unwritable", "cannot open " + path.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw input_error("output-unwritable", "short write to " + path.string());
}

} // namespace lsfkit
