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

#ifndef LSFKIT_TAPER_HPP
#define LSFKIT_TAPER_HPP

#include <Eigen/Dense>

#include <vector>

namespace lsfkit
{

/// A family of discrete prolate spheroidal sequences.
///
/// The sequences are the leading eigenvectors of the sinc-kernel Toeplitz
/// matrix with half bandwidth W = half_bandwidth_numerator / length; they are
/// orthonormal and ordered by decreasing spectral concentration lambda_i.
/// Sign convention: each sequence has a non-negative element sum (ties broken
/// by making the first nonzero element positive).
struct DpssFamily
{
    int length = 0;
    int half_bandwidth_numerator = 0;
    Eigen::MatrixXd sequences;      // count x length, row i = sequence of order i
    Eigen::VectorXd concentrations; // lambda_i, strictly decreasing in (0, 1)
};

/// Separable 2-D multitaper window set G_w[m', q'] = u_i[m' + M/2] * v_j[q' + N/2]
/// with flat window index w = i*J + j, i < I, j < J. The windows are pairwise
/// orthonormal on the support [-M/2, M/2) x [-N/2, N/2).
struct TaperSet
{
    DpssFamily time_family; // length M, I sequences
    DpssFamily freq_family; // length N, J sequences
    std::vector<Eigen::MatrixXd> windows; // I*J matrices of size M x N

    int time_extent() const noexcept { return time_family.length; }
    int freq_extent() const noexcept { return freq_family.length; }
    int count() const noexcept { return static_cast<int>(windows.size()); }
};

/// Computes the `order` leading DPSS of the given length, bandlimited to
/// +-order/length. Solved via the commuting symmetric tridiagonal operator;
/// concentrations are evaluated on the sinc-kernel Toeplitz matrix.
/// Requires 1 <= order < length/2.
DpssFamily compute_dpss(int length, int order);

/// Builds the I*J separable window set from the two DPSS families of
/// lengths M (time) and N (frequency).
TaperSet build_taper_set(int time_extent, int freq_extent, int tapers_time, int tapers_freq);

} // namespace lsfkit

#endif
