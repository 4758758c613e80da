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

#include "lsfkit/marginal.hpp"
#include "lsfkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

namespace lsfkit
{

MarginalProfile pdp(const LocalScatteringFunction &lsf)
{
    MarginalProfile out;
    out.kind = MarginalKind::delay;
    out.num_time_regions = lsf.num_time_regions();
    out.num_freq_regions = lsf.num_freq_regions();
    out.bin_scale = lsf.delay_bin();
    out.values.resize(lsf.num_regions(), lsf.region().freq_extent);
    for (int r = 0; r < lsf.num_regions(); ++r)
        out.values.row(r) = lsf.slice(r).rowwise().mean().transpose();
    return out;
}

MarginalProfile dsd(const LocalScatteringFunction &lsf)
{
    MarginalProfile out;
    out.kind = MarginalKind::doppler;
    out.num_time_regions = lsf.num_time_regions();
    out.num_freq_regions = lsf.num_freq_regions();
    out.bin_scale = lsf.doppler_bin();
    out.values.resize(lsf.num_regions(), lsf.region().time_extent);
    for (int r = 0; r < lsf.num_regions(); ++r)
        out.values.row(r) = lsf.slice(r).colwise().mean();
    return out;
}

std::pair<LocalScatteringFunction, ThresholdReport>
threshold_lsf(const LocalScatteringFunction &lsf, double guard_db, double noise_delay_floor,
              FloorStat stat)
{
    const double tau_s = lsf.delay_bin();
    const int n_extent = lsf.region().freq_extent;
    int first_tail_bin = n_extent;
    for (int n = 0; n < n_extent; ++n)
        if (n * tau_s > noise_delay_floor)
        {
            first_tail_bin = n;
            break;
        }
    if (first_tail_bin >= n_extent)
        throw config_error("no-noise-floor-bins",
                           "no delay bin lies beyond the noise floor window of " +
                               std::to_string(noise_delay_floor) + " s");

    const double gain = std::pow(10.0, guard_db / 10.0);
    const int tail_rows = n_extent - first_tail_bin;
    ThresholdReport report;
    report.floor.resize(lsf.num_time_regions(), lsf.num_freq_regions());
    report.threshold.resize(lsf.num_time_regions(), lsf.num_freq_regions());
    report.bins_retained.resize(lsf.num_time_regions(), lsf.num_freq_regions());

    std::vector<Eigen::MatrixXd> slices;
    slices.reserve(static_cast<std::size_t>(lsf.num_regions()));
    for (int k_t = 1; k_t <= lsf.num_time_regions(); ++k_t)
        for (int k_f = 1; k_f <= lsf.num_freq_regions(); ++k_f)
        {
            const Eigen::MatrixXd &slice = lsf.at(k_t, k_f);
            double floor;
            if (stat == FloorStat::mean)
            {
                floor = slice.bottomRows(tail_rows).mean();
            }
            else
            {
                Eigen::MatrixXd tail = slice.bottomRows(tail_rows);
                std::vector<double> cells(tail.data(), tail.data() + tail.size());
                auto mid = cells.begin() + cells.size() / 2;
                std::nth_element(cells.begin(), mid, cells.end());
                if (cells.size() % 2 == 1)
                {
                    floor = *mid;
                }
                else
                {
                    const double upper = *mid;
                    floor = (*std::max_element(cells.begin(), mid) + upper) / 2.0;
                }
            }
            const double threshold = floor * gain;
            Eigen::MatrixXd kept = (slice.array() < threshold).select(0.0, slice);
            report.floor(k_t - 1, k_f - 1) = floor;
            report.threshold(k_t - 1, k_f - 1) = threshold;
            report.bins_retained(k_t - 1, k_f - 1) =
                static_cast<int>((slice.array() >= threshold).count());
            slices.push_back(std::move(kept));
        }
    LocalScatteringFunction out(lsf.grid(), lsf.region(), lsf.num_time_regions(),
                                lsf.num_freq_regions(), std::move(slices));
    return {std::move(out), std::move(report)};
}

void write_marginal_csv(const MarginalProfile &profile, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw input_error("output-unwritable", "cannot open " + path.string() + " for writing");
    out << "k_t,k_f,bin," << (profile.kind == MarginalKind::delay ? "delay_s" : "doppler_hz")
        << ",power\n";
    char buf[64];
    for (int k_t = 1; k_t <= profile.num_time_regions; ++k_t)
        for (int k_f = 1; k_f <= profile.num_freq_regions; ++k_f)
        {
            const int r = (k_t - 1) * profile.num_freq_regions + (k_f - 1);
            for (int bin = 0; bin < profile.bins(); ++bin)
            {
                out << k_t << ',' << k_f << ',' << bin << ',';
                std::snprintf(buf, sizeof(buf), "%.17g", profile.bin_value(bin));
                out << buf << ',';
                std::snprintf(buf, sizeof(buf), "%.17g", profile.values(r, bin));
                out << buf << '\n';
            }
        }
}

} // namespace lsfkit
