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
#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace lsfkit;

namespace
{

MarginalProfile profile_of(MarginalKind kind, const Eigen::RowVectorXd &row, double bin_scale)
{
    MarginalProfile p;
    p.kind = kind;
    p.num_time_regions = 1;
    p.num_freq_regions = 1;
    p.values = row;
    p.bin_scale = bin_scale;
    return p;
}

// zero Doppler companion so rms_spreads has both marginals
MarginalProfile flat_dsd(int bins, double bin_scale)
{
    return profile_of(MarginalKind::doppler, Eigen::RowVectorXd::Constant(bins, 1.0), bin_scale);
}

} // namespace

TEST_CASE("point mass has zero spread")
{
    Eigen::RowVectorXd pdp_row = Eigen::RowVectorXd::Zero(16);
    pdp_row(7) = 4.2;
    const auto spreads =
        rms_spreads(profile_of(MarginalKind::delay, pdp_row, 25e-9), flat_dsd(16, 25.43));
    CHECK(spreads.mask(0, 0));
    CHECK(spreads.sigma_tau(0, 0) == 0.0);
}

TEST_CASE("two equal-power bins 100 ns apart give 50 ns spread")
{
    Eigen::RowVectorXd pdp_row = Eigen::RowVectorXd::Zero(16);
    pdp_row(2) = 1.0;
    pdp_row(6) = 1.0; // 4 bins at 25 ns
    const auto spreads =
        rms_spreads(profile_of(MarginalKind::delay, pdp_row, 25e-9), flat_dsd(16, 25.43));
    CHECK(spreads.sigma_tau(0, 0) == Catch::Approx(50e-9).epsilon(1e-12));
}

TEST_CASE("a 0.9/0.1 split over 100 ns gives 30 ns spread")
{
    Eigen::RowVectorXd pdp_row = Eigen::RowVectorXd::Zero(16);
    pdp_row(0) = 0.9;
    pdp_row(4) = 0.1;
    const auto spreads =
        rms_spreads(profile_of(MarginalKind::delay, pdp_row, 25e-9), flat_dsd(16, 25.43));
    // mean 10 ns, second moment 1000 ns^2, variance 900 ns^2
    CHECK(spreads.sigma_tau(0, 0) == Catch::Approx(30e-9).epsilon(1e-12));
}

TEST_CASE("doppler spread uses physical bin values around zero")
{
    Eigen::RowVectorXd dsd_row = Eigen::RowVectorXd::Zero(8);
    dsd_row(2) = 1.0; // p = -2
    dsd_row(6) = 1.0; // p = +2
    const auto spreads = rms_spreads(
        profile_of(MarginalKind::delay, Eigen::RowVectorXd::Constant(8, 1.0), 25e-9),
        profile_of(MarginalKind::doppler, dsd_row, 10.0));
    CHECK(spreads.sigma_nu(0, 0) == Catch::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("spreads match brute-force moments on random profiles")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial)
    {
        const int bins = 2 + static_cast<int>(rng() % 15);
        Eigen::RowVectorXd row(bins);
        for (int i = 0; i < bins; ++i)
            row(i) = dist(rng);
        const double scale = 12.5e-9;
        const auto profile = profile_of(MarginalKind::delay, row, scale);
        const auto spreads = rms_spreads(profile, flat_dsd(bins, 1.0));

        double total = 0.0, first = 0.0, second = 0.0;
        for (int i = 0; i < bins; ++i)
        {
            const double x = i * scale;
            total += row(i);
            first += x * row(i);
            second += x * x * row(i);
        }
        const double expected = std::sqrt(second / total - (first / total) * (first / total));
        CHECK(spreads.sigma_tau(0, 0) == Catch::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("spread is scale equivariant and shift invariant")
{
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(32);
    row(3) = 0.2;
    row(9) = 1.3;
    row(11) = 0.7;
    const auto base =
        rms_spreads(profile_of(MarginalKind::delay, row, 25e-9), flat_dsd(32, 1.0));

    const auto scaled =
        rms_spreads(profile_of(MarginalKind::delay, 7.5 * row, 25e-9), flat_dsd(32, 1.0));
    CHECK(scaled.sigma_tau(0, 0) == Catch::Approx(base.sigma_tau(0, 0)).epsilon(1e-12));

    Eigen::RowVectorXd shifted = Eigen::RowVectorXd::Zero(32);
    for (int i = 0; i < 20; ++i)
        shifted(i + 12) = row(i);
    const auto moved =
        rms_spreads(profile_of(MarginalKind::delay, shifted, 25e-9), flat_dsd(32, 1.0));
    CHECK(moved.sigma_tau(0, 0) == Catch::Approx(base.sigma_tau(0, 0)).epsilon(1e-10));
}

TEST_CASE("zero-power regions are masked, not errors")
{
    MarginalProfile delay;
    delay.kind = MarginalKind::delay;
    delay.num_time_regions = 2;
    delay.num_freq_regions = 1;
    delay.values = Eigen::MatrixXd::Zero(2, 8);
    delay.values(0, 3) = 1.0;
    delay.bin_scale = 25e-9;
    MarginalProfile doppler = delay;
    doppler.kind = MarginalKind::doppler;
    doppler.bin_scale = 25.43;
    const auto spreads = rms_spreads(delay, doppler);
    CHECK(spreads.mask(0, 0));
    CHECK_FALSE(spreads.mask(1, 0));
    CHECK(std::isnan(spreads.sigma_tau(1, 0)));
}

TEST_CASE("spread stays within the bounded-grid limit")
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    Eigen::RowVectorXd row(64);
    for (int i = 0; i < 64; ++i)
        row(i) = dist(rng);
    const auto spreads =
        rms_spreads(profile_of(MarginalKind::delay, row, 25e-9), flat_dsd(64, 25.43));
    CHECK(spreads.sigma_tau(0, 0) <= (64 - 1) * 25e-9 / 2.0);
    CHECK(spreads.sigma_nu(0, 0) <= (64 - 1) * 25.43 / 2.0);
}

TEST_CASE("coherence reproduces the reference scenario table rows within 0.5%")
{
    struct Row
    {
        double sigma_tau_ns;
        double b_coh_khz;
        double sigma_nu_hz;
        double t_coh_us;
    };
    // max spread and coherence columns of the reference scenario table
    const Row rows[] = {
        {255.77, 651.62, 352.93, 472.23}, // street crossing, suburban with traffic
        {808.23, 206.21, 684.03, 243.65}, // street crossing, suburban without traffic
        {925.66, 180.05, 933.70, 178.50}, // street crossing, urban single lane
        {926.66, 179.86, 822.75, 202.57}, // street crossing, urban multiple lane
        {674.95, 246.93, 684.83, 243.37}, // general LOS obstruction, highway
        {254.45, 655.02, 402.61, 413.97}, // merging lanes, rural
        {924.79, 180.22, 849.91, 196.10}, // traffic congestion, slow traffic
        {677.20, 246.11, 511.78, 325.66}, // traffic congestion, approaching jam
        {244.75, 680.98, 492.56, 338.37}, // in-tunnel
        {951.07, 175.24, 895.48, 186.12}, // on-bridge
    };
    for (const Row &row : rows)
    {
        const CoherenceReport report = coherence(row.sigma_tau_ns * 1e-9, row.sigma_nu_hz, 0.5);
        CHECK(report.coherence_bandwidth ==
              Catch::Approx(row.b_coh_khz * 1e3).epsilon(0.005));
        CHECK(report.coherence_time == Catch::Approx(row.t_coh_us * 1e-6).epsilon(0.005));
    }
}

TEST_CASE("coherence rejects zero spreads and bad levels")
{
    CHECK_THROWS_AS(coherence(0.0, 100.0, 0.5), error);
    CHECK_THROWS_AS(coherence(100e-9, 0.0, 0.5), error);
    CHECK_THROWS_AS(coherence(100e-9, 100.0, 0.0), error);
    CHECK_THROWS_AS(coherence(100e-9, 100.0, 1.0), error);
}

TEST_CASE("spreads CSV marks masked regions")
{
    MarginalProfile delay;
    delay.kind = MarginalKind::delay;
    delay.num_time_regions = 2;
    delay.num_freq_regions = 1;
    delay.values = Eigen::MatrixXd::Zero(2, 8);
    delay.values(0, 3) = 1.0;
    delay.bin_scale = 25e-9;
    MarginalProfile doppler = delay;
    doppler.kind = MarginalKind::doppler;
    const auto spreads = rms_spreads(delay, doppler);
    testsupport::TempDir dir("spreads_csv");
    const auto file = dir.path() / "spreads.csv";
    write_spreads_csv(spreads, file);
    const std::string text = testsupport::read_file_bytes(file);
    CHECK(text.find("k_t,k_f,sigma_tau_s,sigma_nu_hz,masked") == 0);
    CHECK(text.find("2,1,nan,nan,1") != std::string::npos);
}
