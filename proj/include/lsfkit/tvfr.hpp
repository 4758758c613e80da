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

#ifndef LSFKIT_TVFR_HPP
#define LSFKIT_TVFR_HPP

#include "lsfkit/grid.hpp"

#include <Eigen/Dense>

#include <complex>
#include <filesystem>
#include <vector>

namespace lsfkit
{

/// Sampled time-variant frequency response H_l[m, q] for L links.
///
/// One S x Q complex matrix per link: rows are snapshots m (time), columns
/// are frequency bins q. Values are held in double precision; the container
/// format on disk stores float32 pairs. Immutable after construction; all
/// samples are validated finite.
class TimeVariantFrequencyResponse
{
  public:
    TimeVariantFrequencyResponse(GridParams grid, std::vector<Eigen::MatrixXcd> link_samples);

    const GridParams &grid() const noexcept { return grid_; }

    /// Samples of one link, 1-based link index.
    const Eigen::MatrixXcd &link(int link_index) const;

    int num_links() const noexcept { return static_cast<int>(links_.size()); }

  private:
    GridParams grid_;
    std::vector<Eigen::MatrixXcd> links_;
};

// Binary container, little-endian:
//   magic   "TVFR0001"                                  8 bytes
//   u32     L, S, Q
//   f64     t_s, f_s, B, f_c
//   payload L*S*Q complex samples as interleaved (real, imag) float32,
//           link slowest, then snapshot, then frequency bin fastest.
TimeVariantFrequencyResponse read_container(const std::filesystem::path &path);
void write_container(const TimeVariantFrequencyResponse &tvfr, const std::filesystem::path &path);

} // namespace lsfkit

#endif
