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

#ifndef LSFKIT_MIXFIT_HPP
#define LSFKIT_MIXFIT_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>

namespace lsfkit
{

/// Bi-modal Gaussian mixture truncated to (0, z_max).
///
/// Density f(z) = (1/alpha) * (w * phi(z; mu1, sigma1) + (1-w) * phi(z; mu2, sigma2))
/// on (0, z_max); alpha is the untruncated mixture mass of that interval so
/// the truncated CDF reaches exactly 1 at z_max. A single-component fit has
/// w = 1 and no second component. Components are ordered mu1 <= mu2.
struct MixtureFit
{
    double w = 1.0;
    double mu1 = 0.0;
    double sigma1 = 0.0;
    std::optional<double> mu2;
    std::optional<double> sigma2;
    double z_max = 0.0;
    double alpha = 1.0; // F'_0(z_max) - F'_0(0) of the untruncated mixture
    double gof = 0.0;   // Kolmogorov-Smirnov statistic of the fit
    std::size_t n_samples = 0;

    bool single_component() const noexcept { return !mu2.has_value(); }
};

/// Upper-tail probability of the standard normal, Q(x) = 0.5*erfc(x/sqrt(2)).
double q_function(double x);

double mixture_pdf(const MixtureFit &fit, double z);
/// Truncated CDF; clamps to 0 below 0 and to 1 above z_max.
double mixture_cdf(const MixtureFit &fit, double z);

/// Maximum-likelihood fit of the truncated mixture by expectation-
/// maximization, truncation-corrected. Deterministic: components start at
/// the 25th/75th percentile with split-half scale estimates, iterate until
/// the log-likelihood gain drops below 1e-8 or 500 iterations. A second
/// component is kept only when it improves the Bayesian information
/// criterion and neither collapses (responsibility mass < 1e-3 or scale at
/// the floor of 1e-6 times the sample range). Requires >= 100 positive
/// samples that are not all equal.
MixtureFit fit_mixture(std::span<const double> samples);

/// sup_z |empirical CDF - model CDF| over the sample points, evaluating both
/// one-sided empirical limits at every sample.
double ks_gof(std::span<const double> samples, const MixtureFit &fit);

void write_fit_json(const MixtureFit &fit, const std::filesystem::path &path);
/// CSV rows (z, empirical_cdf, model_cdf) at the sorted sample points.
void write_cdf_csv(std::span<const double> samples, const MixtureFit &fit,
                   const std::filesystem::path &path);

} // namespace lsfkit

#endif
