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

#include "lsfkit/mixfit.hpp"
#include "lsfkit/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace lsfkit
{

namespace
{

constexpr double kSqrt2 = std::numbers::sqrt2;
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

double std_normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }
double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

// Mass, mean and variance of a normal(mu, sigma) truncated to (0, b).
struct TruncStats
{
    double mass;
    double mean;
    double var;
};

TruncStats truncated_normal_stats(double mu, double sigma, double b)
{
    const double lo = (0.0 - mu) / sigma;
    const double hi = (b - mu) / sigma;
    const double mass = std_normal_cdf(hi) - std_normal_cdf(lo);
    if (mass < 1e-12)
        return {mass, mu, sigma * sigma};
    const double plo = std_normal_pdf(lo);
    const double phi_hi = std_normal_pdf(hi);
    const double mean = mu + sigma * (plo - phi_hi) / mass;
    const double ratio = (plo - phi_hi) / mass;
    double var = sigma * sigma * (1.0 + (lo * plo - hi * phi_hi) / mass - ratio * ratio);
    return {mass, mean, std::max(var, 0.0)};
}

struct Component
{
    double weight; // weight of the truncated-normal component
    double mu;
    double sigma;
};

double log_likelihood(const std::vector<Component> &comps, const std::vector<double> &z, double b)
{
    std::vector<double> log_gain(comps.size());
    for (std::size_t c = 0; c < comps.size(); ++c)
    {
        const auto &cc = comps[c];
        const double mass = std::max(truncated_normal_stats(cc.mu, cc.sigma, b).mass, 1e-12);
        log_gain[c] = std::log(std::max(cc.weight, 1e-300)) - std::log(cc.sigma) - std::log(mass) -
                      0.5 * std::log(2.0 * std::numbers::pi);
    }
    double acc = 0.0;
    std::vector<double> terms(comps.size());
    for (double v : z)
    {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < comps.size(); ++c)
        {
            const double x = (v - comps[c].mu) / comps[c].sigma;
            terms[c] = log_gain[c] - 0.5 * x * x;
            best = std::max(best, terms[c]);
        }
        double sum = 0.0;
        for (double t : terms)
            sum += std::exp(t - best);
        acc += best + std::log(sum);
    }
    return acc;
}

// Quantile by linear interpolation between closest ranks of the sorted data.
double quantile(const std::vector<double> &sorted, double q)
{
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

double span_std(const std::vector<double> &sorted, std::size_t begin, std::size_t end,
                double floor_value)
{
    if (end - begin < 2)
        return floor_value;
    double mean = 0.0;
    for (std::size_t i = begin; i < end; ++i)
        mean += sorted[i];
    mean /= static_cast<double>(end - begin);
    double var = 0.0;
    for (std::size_t i = begin; i < end; ++i)
        var += (sorted[i] - mean) * (sorted[i] - mean);
    var /= static_cast<double>(end - begin);
    return std::max(std::sqrt(var), floor_value);
}

struct EmResult
{
    std::vector<Component> comps;
    double loglik = 0.0;
    bool collapsed = false;
};

// EM for a mixture of normals truncated to (0, b). Each M step treats the
// mass the untruncated component places outside (0, b) as hidden samples
// with its model-implied moments.
EmResult run_em(const std::vector<double> &z, int ncomp, double sigma_floor)
{
    const double b = z.back();
    const std::size_t n = z.size();

    EmResult result;
    auto &comps = result.comps;
    if (ncomp == 1)
    {
        comps.push_back({1.0, quantile(z, 0.5), span_std(z, 0, n, sigma_floor)});
    }
    else
    {
        const std::size_t half = n / 2;
        comps.push_back({0.5, quantile(z, 0.25), span_std(z, 0, half, sigma_floor)});
        comps.push_back({0.5, quantile(z, 0.75), span_std(z, half, n, sigma_floor)});
    }

    std::vector<double> resp(static_cast<std::size_t>(ncomp) * n);
    std::vector<double> log_gain(static_cast<std::size_t>(ncomp));
    double ll_old = -std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int iter = 0; iter < 500; ++iter)
    {
        // E step in the log domain; also accumulates the log-likelihood of
        // the current parameters from the same normalizers
        for (int c = 0; c < ncomp; ++c)
        {
            const auto &cc = comps[static_cast<std::size_t>(c)];
            const double mass = std::max(truncated_normal_stats(cc.mu, cc.sigma, b).mass, 1e-12);
            log_gain[static_cast<std::size_t>(c)] = std::log(std::max(cc.weight, 1e-300)) -
                                                    std::log(cc.sigma) - std::log(mass);
        }
        double ll = -0.5 * std::log(2.0 * std::numbers::pi) * static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            double best = -std::numeric_limits<double>::infinity();
            for (int c = 0; c < ncomp; ++c)
            {
                const auto &cc = comps[static_cast<std::size_t>(c)];
                const double x = (z[i] - cc.mu) / cc.sigma;
                const double lr = log_gain[static_cast<std::size_t>(c)] - 0.5 * x * x;
                resp[static_cast<std::size_t>(c) * n + i] = lr;
                best = std::max(best, lr);
            }
            double denom = 0.0;
            for (int c = 0; c < ncomp; ++c)
                denom += std::exp(resp[static_cast<std::size_t>(c) * n + i] - best);
            for (int c = 0; c < ncomp; ++c)
            {
                double &r = resp[static_cast<std::size_t>(c) * n + i];
                r = std::exp(r - best) / denom;
            }
            ll += best + std::log(denom);
        }
        if (iter > 0 && ll - ll_old < 1e-8)
        {
            result.loglik = ll;
            converged = true;
            break;
        }
        ll_old = ll;
        // M step
        for (int c = 0; c < ncomp; ++c)
        {
            auto &cc = comps[static_cast<std::size_t>(c)];
            const double *r = resp.data() + static_cast<std::size_t>(c) * n;
            double nc = 0.0, m1 = 0.0;
            for (std::size_t i = 0; i < n; ++i)
            {
                nc += r[i];
                m1 += r[i] * z[i];
            }
            if (ncomp > 1 && nc / static_cast<double>(n) < 1e-3)
            {
                result.collapsed = true;
                return result;
            }
            m1 /= nc;
            const TruncStats ts = truncated_normal_stats(cc.mu, cc.sigma, b);
            double mu_new, var_new;
            if (ts.mass > 1e-12 && ts.mass < 1.0 - 1e-14)
            {
                // hidden fraction outside the window, with its implied moments
                const double hidden = (1.0 - ts.mass) / ts.mass;
                const double mean_out = (cc.mu - ts.mass * ts.mean) / (1.0 - ts.mass);
                const double second_out = (cc.mu * cc.mu + cc.sigma * cc.sigma -
                                           ts.mass * (ts.var + ts.mean * ts.mean)) /
                                          (1.0 - ts.mass);
                const double var_out = std::max(second_out - mean_out * mean_out, 0.0);
                mu_new = (m1 + hidden * mean_out) / (1.0 + hidden);
                double s2_obs = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    s2_obs += r[i] * (z[i] - mu_new) * (z[i] - mu_new);
                s2_obs /= nc;
                var_new = (s2_obs + hidden * (var_out + (mean_out - mu_new) * (mean_out - mu_new))) /
                          (1.0 + hidden);
            }
            else
            {
                mu_new = m1;
                double s2_obs = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    s2_obs += r[i] * (z[i] - mu_new) * (z[i] - mu_new);
                var_new = s2_obs / nc;
            }
            cc.mu = mu_new;
            cc.sigma = std::sqrt(std::max(var_new, 0.0));
            cc.weight = nc / static_cast<double>(n);
            if (cc.sigma <= sigma_floor)
            {
                if (ncomp > 1)
                {
                    result.collapsed = true;
                    return result;
                }
                cc.sigma = sigma_floor;
            }
        }
    }
    if (!converged)
        result.loglik = log_likelihood(comps, z, b);
    return result;
}

double untruncated_mixture_cdf(const MixtureFit &fit, double z)
{
    double acc = fit.w * (1.0 - q_function((z - fit.mu1) / fit.sigma1));
    if (!fit.single_component())
        acc += (1.0 - fit.w) * (1.0 - q_function((z - *fit.mu2) / *fit.sigma2));
    return acc;
}

void validate_fit_params(const MixtureFit &fit)
{
    const bool two = !fit.single_component();
    if (!(fit.w >= 0.0 && fit.w <= 1.0) || !(fit.sigma1 > 0.0) || !(fit.z_max > 0.0) ||
        (two && (!(*fit.sigma2 > 0.0) || !fit.sigma2.has_value())))
        throw config_error("mixture-params", "mixture parameters violate their domain");
    if (two && fit.mu1 > *fit.mu2)
        throw config_error("mixture-params", "components must be ordered mu1 <= mu2");
}

} // namespace

double q_function(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double mixture_pdf(const MixtureFit &fit, double z)
{
    validate_fit_params(fit);
    if (z <= 0.0 || z >= fit.z_max)
        return 0.0;
    const double x1 = (z - fit.mu1) / fit.sigma1;
    double acc = fit.w * std_normal_pdf(x1) / fit.sigma1;
    if (!fit.single_component())
    {
        const double x2 = (z - *fit.mu2) / *fit.sigma2;
        acc += (1.0 - fit.w) * std_normal_pdf(x2) / *fit.sigma2;
    }
    return acc / fit.alpha;
}

double mixture_cdf(const MixtureFit &fit, double z)
{
    validate_fit_params(fit);
    if (z <= 0.0)
        return 0.0;
    if (z >= fit.z_max)
        return 1.0;
    const double base = untruncated_mixture_cdf(fit, 0.0);
    return (untruncated_mixture_cdf(fit, z) - base) / fit.alpha;
}

MixtureFit fit_mixture(std::span<const double> samples)
{
    if (samples.size() < 100)
        throw config_error("too-few-samples", "mixture fitting needs at least 100 samples, got " +
                                                  std::to_string(samples.size()));
    std::vector<double> z(samples.begin(), samples.end());
    for (double v : z)
        if (!(v > 0.0) || !std::isfinite(v))
            throw config_error("non-positive-samples", "all samples must be positive and finite");
    std::sort(z.begin(), z.end());
    if (z.front() == z.back())
        throw numeric_error("single-point", "degenerate sample set: all values equal");

    const double sigma_floor = 1e-6 * (z.back() - z.front());
    const EmResult one = run_em(z, 1, sigma_floor);
    EmResult two = run_em(z, 2, sigma_floor);

    bool use_two = !two.collapsed;
    if (use_two)
    {
        // Bayesian information criterion; the second component must pay for
        // its three extra parameters.
        const double logn = std::log(static_cast<double>(z.size()));
        const double bic1 = -2.0 * one.loglik + 2.0 * logn;
        const double bic2 = -2.0 * two.loglik + 5.0 * logn;
        use_two = bic2 < bic1;
    }

    MixtureFit fit;
    fit.z_max = z.back();
    fit.n_samples = z.size();
    if (use_two)
    {
        auto &a = two.comps[0];
        auto &b = two.comps[1];
        if (a.mu > b.mu)
            std::swap(a, b);
        // The EM weights belong to the truncated components; the reported w
        // weighs the untruncated mixture that the truncation normalizer acts
        // on, so each weight is deflated by its component's window mass.
        const double mass_a = std::max(truncated_normal_stats(a.mu, a.sigma, fit.z_max).mass, 1e-12);
        const double mass_b = std::max(truncated_normal_stats(b.mu, b.sigma, fit.z_max).mass, 1e-12);
        const double wa = a.weight / mass_a;
        const double wb = b.weight / mass_b;
        fit.w = wa / (wa + wb);
        fit.mu1 = a.mu;
        fit.sigma1 = a.sigma;
        fit.mu2 = b.mu;
        fit.sigma2 = b.sigma;
    }
    else
    {
        fit.w = 1.0;
        fit.mu1 = one.comps[0].mu;
        fit.sigma1 = one.comps[0].sigma;
    }
    fit.alpha = untruncated_mixture_cdf(fit, fit.z_max) - untruncated_mixture_cdf(fit, 0.0);
    fit.gof = ks_gof(z, fit);
    return fit;
}

double ks_gof(std::span<const double> samples, const MixtureFit &fit)
{
    if (samples.empty())
        throw config_error("too-few-samples", "KS statistic needs at least one sample");
    std::vector<double> z(samples.begin(), samples.end());
    std::sort(z.begin(), z.end());
    const double n = static_cast<double>(z.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
    {
        const double model = mixture_cdf(fit, z[i]);
        const double above = static_cast<double>(i + 1) / n;
        const double below = static_cast<double>(i) / n;
        sup = std::max({sup, std::abs(model - above), std::abs(model - below)});
    }
    return sup;
}

void write_fit_json(const MixtureFit &fit, const std::filesystem::path &path)
{
    nlohmann::json j;
    j["w"] = fit.w;
    j["mu1"] = fit.mu1;
    j["sigma1"] = fit.sigma1;
    if (fit.single_component())
    {
        j["mu2"] = nullptr;
        j["sigma2"] = nullptr;
    }
    else
    {
        j["mu2"] = *fit.mu2;
        j["sigma2"] = *fit.sigma2;
    }
    j["z_max"] = fit.z_max;
    j["alpha"] = fit.alpha;
    j["gof"] = fit.gof;
    j["n_samples"] = fit.n_samples;
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw input_error("output-unwritable", "cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
}

void write_cdf_csv(std::span<const double> samples, const MixtureFit &fit,
                   const std::filesystem::path &path)
{
    std::vector<double> z(samples.begin(), samples.end());
    std::sort(z.begin(), z.end());
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw input_error("output-unwritable", "cannot open " + path.string() + " for writing");
    out << "z,empirical_cdf,model_cdf\n";
    char buf[64];
    for (std::size_t i = 0; i < z.size(); ++i)
    {
        std::snprintf(buf, sizeof(buf), "%.17g", z[i]);
        out << buf << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", static_cast<double>(i + 1) / z.size());
        out << buf << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", mixture_cdf(fit, z[i]));
        out << buf << '\n';
    }
}

} // namespace lsfkit
