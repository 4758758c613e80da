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

#include "lsfkit/taper.hpp"
#include "lsfkit/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace lsfkit
{

namespace
{

// Sinc-kernel Toeplitz entry sin(2*pi*W*d) / (pi*d), with the removable
// singularity 2W at d = 0.
double sinc_kernel(double half_bandwidth, int distance)
{
    if (distance == 0)
        return 2.0 * half_bandwidth;
    const double d = static_cast<double>(distance);
    return std::sin(2.0 * std::numbers::pi * half_bandwidth * d) / (std::numbers::pi * d);
}

// Applies the length x length sinc Toeplitz matrix to a vector.
Eigen::VectorXd apply_sinc_toeplitz(double half_bandwidth, const Eigen::VectorXd &v)
{
    const int n = static_cast<int>(v.size());
    Eigen::VectorXd kernel(2 * n - 1);
    for (int d = -(n - 1); d <= n - 1; ++d)
        kernel(d + n - 1) = sinc_kernel(half_bandwidth, d);
    Eigen::VectorXd out(n);
    for (int r = 0; r < n; ++r)
    {
        double acc = 0.0;
        for (int c = 0; c < n; ++c)
            acc += kernel(r - c + n - 1) * v(c);
        out(r) = acc;
    }
    return out;
}

void fix_sign(Eigen::Ref<Eigen::VectorXd> seq)
{
    const double total = seq.sum();
    if (total < 0.0)
    {
        seq = -seq;
        return;
    }
    if (total == 0.0)
    {
        for (Eigen::Index k = 0; k < seq.size(); ++k)
            if (seq(k) != 0.0)
            {
                if (seq(k) < 0.0)
                    seq = -seq;
                return;
            }
    }
}

} // namespace

DpssFamily compute_dpss(int length, int order)
{
    if (length < 3)
        throw config_error("dpss-order", "sequence length must be at least 3");
    if (order < 1 || 2 * order >= length)
        throw config_error("dpss-order", "taper order " + std::to_string(order) +
                                             " must satisfy 1 <= order < length/2 for length " +
                                             std::to_string(length));

    const double half_bandwidth = static_cast<double>(order) / static_cast<double>(length);

    // Commuting tridiagonal operator; its top eigenvectors are the DPSS in
    // concentration order and it stays well conditioned where the Toeplitz
    // matrix has eigenvalues clustered exponentially close to 1.
    const double c = std::cos(2.0 * std::numbers::pi * half_bandwidth);
    Eigen::VectorXd diag(length), subdiag(length - 1);
    for (int i = 0; i < length; ++i)
    {
        const double half_offset = 0.5 * static_cast<double>(length - 1 - 2 * i);
        diag(i) = c * half_offset * half_offset;
    }
    for (int i = 1; i < length; ++i)
        subdiag(i - 1) = 0.5 * static_cast<double>(i) * static_cast<double>(length - i);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw numeric_error("eigensolver", "tridiagonal eigendecomposition failed");

    DpssFamily family;
    family.length = length;
    family.half_bandwidth_numerator = order;
    family.sequences.resize(order, length);
    family.concentrations.resize(order);
    for (int i = 0; i < order; ++i)
    {
        // Eigenvalues come back ascending; order i is the (i+1)-th largest.
        Eigen::VectorXd seq = solver.eigenvectors().col(length - 1 - i);
        seq.normalize();
        fix_sign(seq);
        family.sequences.row(i) = seq.transpose();
        family.concentrations(i) = seq.dot(apply_sinc_toeplitz(half_bandwidth, seq));
    }
    return family;
}

TaperSet build_taper_set(int time_extent, int freq_extent, int tapers_time, int tapers_freq)
{
    TaperSet set;
    set.time_family = compute_dpss(time_extent, tapers_time);
    set.freq_family = compute_dpss(freq_extent, tapers_freq);
    set.windows.reserve(static_cast<std::size_t>(tapers_time) * tapers_freq);
    for (int i = 0; i < tapers_time; ++i)
        for (int j = 0; j < tapers_freq; ++j)
            set.windows.push_back(set.time_family.sequences.row(i).transpose() *
                                  set.freq_family.sequences.row(j));
    return set;
}

} // namespace lsfkit
