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
//
// Test-only oracles, kept independent of the production code paths they
// check: the scattering function via literal quadruple sums, DPSS via a
// dense Toeplitz eigendecomposition, and a rejection sampler for truncated
// mixtures.

#ifndef LSFKIT_TESTS_SUPPORT_HPP
#define LSFKIT_TESTS_SUPPORT_HPP

#include "lsfkit/lsf.hpp"
#include "lsfkit/taper.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace testsupport
{

// Literal evaluation of the windowed 2-D transform and taper average for one
// region block, quadruple loop, no fast paths.
inline Eigen::MatrixXd brute_force_region(const Eigen::MatrixXcd &samples,
                                          const lsfkit::TaperSet &tapers, int k_t, int k_f)
{
    const int m_extent = tapers.time_extent();
    const int n_extent = tapers.freq_extent();
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n_extent, m_extent); // [n, p_idx]
    for (const auto &window : tapers.windows)
    {
        for (int n = 0; n < n_extent; ++n)
            for (int p = -m_extent / 2; p < m_extent / 2; ++p)
            {
                std::complex<double> sum = 0.0;
                for (int mp = -m_extent / 2; mp < m_extent / 2; ++mp)
                    for (int qp = -n_extent / 2; qp < n_extent / 2; ++qp)
                    {
                        const double phase =
                            -2.0 * std::numbers::pi *
                            (static_cast<double>(p) * mp / m_extent -
                             static_cast<double>(n) * qp / n_extent);
                        sum += samples(k_t * m_extent + mp, k_f * n_extent + qp) *
                               window(mp + m_extent / 2, qp + n_extent / 2) *
                               std::polar(1.0, phase);
                    }
                acc(n, p + m_extent / 2) += std::norm(sum);
            }
    }
    return acc / static_cast<double>(tapers.count());
}

// Dense sinc-kernel Toeplitz eigendecomposition; the direct reading of the
// defining eigenproblem.
inline Eigen::MatrixXd dense_dpss_oracle(int length, int order)
{
    const double w = static_cast<double>(order) / length;
    Eigen::MatrixXd toeplitz(length, length);
    for (int r = 0; r < length; ++r)
        for (int c = 0; c < length; ++c)
        {
            const int d = r - c;
            toeplitz(r, c) = d == 0 ? 2.0 * w
                                    : std::sin(2.0 * std::numbers::pi * w * d) /
                                          (std::numbers::pi * d);
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(toeplitz);
    Eigen::MatrixXd sequences(order, length);
    for (int i = 0; i < order; ++i)
        sequences.row(i) = solver.eigenvectors().col(length - 1 - i).transpose();
    return sequences;
}

inline double max_abs_diff_up_to_sign(const Eigen::VectorXd &a, const Eigen::VectorXd &b)
{
    const double direct = (a - b).cwiseAbs().maxCoeff();
    const double flipped = (a + b).cwiseAbs().maxCoeff();
    return std::min(direct, flipped);
}

// Rejection sampler for the truncated bi-modal mixture, deterministic per seed.
inline std::vector<double> sample_truncated_mixture(std::size_t count, double w, double mu1,
                                                    double sigma1, double mu2, double sigma2,
                                                    double z_max, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal1(mu1, sigma1), normal2(mu2, sigma2);
    std::vector<double> out;
    out.reserve(count);
    while (out.size() < count)
    {
        const double draw = unit(rng) < w ? normal1(rng) : normal2(rng);
        if (draw > 0.0 && draw < z_max)
            out.push_back(draw);
    }
    return out;
}

class TempDir
{
  public:
    explicit TempDir(const std::string &tag)
    {
        path_ = std::filesystem::temp_directory_path() /
                ("lsfkit_test_" + tag + "_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    const std::filesystem::path &path() const { return path_; }

  private:
    std::filesystem::path path_;
};

inline std::string read_file_bytes(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

} // namespace testsupport

#endif
