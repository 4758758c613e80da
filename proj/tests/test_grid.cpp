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

#include "lsfkit/errors.hpp"
#include "lsfkit/grid.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace lsfkit;

TEST_CASE("link_index maps the antenna grid onto 1..16")
{
    CHECK(link_index(1, 4) == 1);
    CHECK(link_index(4, 1) == 16);
    CHECK(link_index(2, 3) == 6);
}

TEST_CASE("link_index is a bijection over the 4x4 grid")
{
    std::set<int> seen;
    for (int tx = 1; tx <= 4; ++tx)
        for (int rx = 1; rx <= 4; ++rx)
            seen.insert(link_index(tx, rx));
    CHECK(seen.size() == 16);
    CHECK(*seen.begin() == 1);
    CHECK(*seen.rbegin() == 16);
}

TEST_CASE("link_index rejects out-of-range antennas")
{
    CHECK_THROWS_AS(link_index(0, 1), error);
    CHECK_THROWS_AS(link_index(1, 5), error);
    CHECK_THROWS_AS(link_index(5, 5), error);
}

TEST_CASE("grid parameters enforce f_s * Q = B")
{
    CHECK_NOTHROW(GridParams(307.2e-6, 240e6 / 769, 240e6, 100, 769, 16, 5.6e9));
    CHECK_THROWS_AS(GridParams(307.2e-6, 240e6 / 769 * 1.001, 240e6, 100, 769, 16, 5.6e9), error);
}

TEST_CASE("grid parameters reject degenerate values")
{
    CHECK_THROWS_AS(GridParams(0.0, 1.0, 1.0, 1, 1, 1, 0.0), error);
    CHECK_THROWS_AS(GridParams(1.0, 1.0, 1.0, 0, 1, 1, 0.0), error);
    CHECK_THROWS_AS(GridParams(1.0, -1.0, -1.0, 1, 1, 1, 0.0), error);
}

TEST_CASE("measurement defaults carry the sounder parameters")
{
    const GridParams grid = GridParams::measurement_defaults(32500);
    CHECK(grid.snapshot_interval == 307.2e-6);
    CHECK(grid.bandwidth == 240e6);
    CHECK(grid.num_freq_bins == 769);
    CHECK(grid.num_links == 16);
    CHECK(grid.carrier == 5.6e9);
    CHECK(grid.freq_bin == Catch::Approx(312.09e3).epsilon(1e-4));
    // both recording lengths are just sizes to the data model
    CHECK_NOTHROW(GridParams::measurement_defaults(65000));
}
