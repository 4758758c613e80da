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

#ifndef LSFKIT_DISPERSION_HPP
#define LSFKIT_DISPERSION_HPP

#include "lsfkit/marginal.hpp"

#include <Eigen/Dense>

#include <filesystem>

namespace lsfkit
{

/// Time-frequency-varying RMS delay and Doppler spreads. Regions whose
/// post-threshold power is zero are masked rather than reported as zero.
struct SpreadSeries
{
    Eigen::MatrixXd sigma_tau; // K_t x K_f [s]
    Eigen::MatrixXd sigma_nu;  // K_t x K_f [Hz]
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> mask; // true = region has power

    int num_time_regions() const noexcept { return static_cast<int>(sigma_tau.rows()); }
    int num_freq_regions() const noexcept { return static_cast<int>(sigma_tau.cols()); }
};

/// Square roots of the second central moments of the PDP (over delays
/// n*tau_s) and the DSD (over Doppler shifts p*nu_s, p in [-M/2, M/2)).
SpreadSeries rms_spreads(const MarginalProfile &pdp_profile, const MarginalProfile &dsd_profile);

/// Coherence bandwidth/time at correlation level k from reference spreads:
/// B_coh = arccos(k) / (2*pi*sigma_tau), T_coh = arccos(k) / (2*pi*sigma_nu).
struct CoherenceReport
{
    double coherence_bandwidth = 0.0; // [Hz]
    double coherence_time = 0.0;      // [s]
    double level = 0.0;               // k
};

CoherenceReport coherence(double sigma_tau_ref, double sigma_nu_ref, double level);

/// CSV rows (k_t, k_f, sigma_tau_s, sigma_nu_hz, masked); masked regions
/// print nan spreads and masked = 1.
void write_spreads_csv(const SpreadSeries &spreads, const std::filesystem::path &path);

} // namespace lsfkit

#endif
