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

#include "lsfkit/dispersion.hpp"
#include "lsfkit/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace lsfkit
{

namespace
{

double weighted_rms_spread(const Eigen::RowVectorXd &weights, const MarginalProfile &profile)
{
    const double total = weights.sum();
    double mean = 0.0;
    for (int bin = 0; bin < weights.size(); ++bin)
        mean += profile.bin_value(bin) * weights(bin);
    mean /= total;
    double var = 0.0;
    for (int bin = 0; bin < weights.size(); ++bin)
    {
        const double d = profile.bin_value(bin) - mean;
        var += d * d * weights(bin);
    }
    return std::sqrt(std::max(var / total, 0.0));
}

} // namespace

SpreadSeries rms_spreads(const MarginalProfile &pdp_profile, const MarginalProfile &dsd_profile)
{
    if (pdp_profile.kind != MarginalKind::delay || dsd_profile.kind != MarginalKind::doppler)
        throw config_error("spreads-input", "expected a delay profile and a Doppler profile");
    if (pdp_profile.num_time_regions != dsd_profile.num_time_regions ||
        pdp_profile.num_freq_regions != dsd_profile.num_freq_regions)
        throw config_error("spreads-input", "marginal profiles must share the region tiling");

    const int k_t_count = pdp_profile.num_time_regions;
    const int k_f_count = pdp_profile.num_freq_regions;
    SpreadSeries out;
    out.sigma_tau.setConstant(k_t_count, k_f_count, std::numeric_limits<double>::quiet_NaN());
    out.sigma_nu.setConstant(k_t_count, k_f_count, std::numeric_limits<double>::quiet_NaN());
    out.mask.setConstant(k_t_count, k_f_count, false);
    for (int k_t = 1; k_t <= k_t_count; ++k_t)
        for (int k_f = 1; k_f <= k_f_count; ++k_f)
        {
            const int r = (k_t - 1) * k_f_count + (k_f - 1);
            const double pdp_total = pdp_profile.values.row(r).sum();
            const double dsd_total = dsd_profile.values.row(r).sum();
            if (pdp_total <= 0.0 || dsd_total <= 0.0)
                continue;
            out.sigma_tau(k_t - 1, k_f - 1) = weighted_rms_spread(pdp_profile.values.row(r), pdp_profile);
            out.sigma_nu(k_t - 1, k_f - 1) = weighted_rms_spread(dsd_profile.values.row(r), dsd_profile);
            out.mask(k_t - 1, k_f - 1) = true;
        }
    return out;
}

CoherenceReport coherence(double sigma_tau_ref, double sigma_nu_ref, double level)
{
    if (!(level > 0.0) || !(level < 1.0))
        throw config_error("coherence-level", "correlation level must lie in (0, 1)");
    if (!(sigma_tau_ref > 0.0) || !(sigma_nu_ref > 0.0))
        throw numeric_error("undefined-coherence", "coherence is undefined for zero spreads");
    const double angle = std::acos(level);
    CoherenceReport report;
    report.coherence_bandwidth = angle / (2.0 * std::numbers::pi * sigma_tau_ref);
    report.coherence_time = angle / (2.0 * std::numbers::pi * sigma_nu_ref);
    report.level = level;
    return report;
}

void write_spreads_csv(const SpreadSeries &spreads, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw input_error("output-unwritable", "cannot open " + path.string() + " for writing");
    out << "k_t,k_f,sigma_tau_s,sigma_nu_hz,masked\n";
    char buf[64];
    for (int k_t = 1; k_t <= spreads.num_time_regions(); ++k_t)
        for (int k_f = 1; k_f <= spreads.num_freq_regions(); ++k_f)
        {
            out << k_t << ',' << k_f << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", spreads.sigma_tau(k_t - 1, k_f - 1));
            out << buf << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", spreads.sigma_nu(k_t - 1, k_f - 1));
            out << buf << ',' << (spreads.mask(k_t - 1, k_f - 1) ? 0 : 1) << '\n';
        }
}

} // namespace lsfkit
