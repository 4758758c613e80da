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

#ifndef LSFKIT_ERRORS_HPP
#define LSFKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lsfkit
{

// Error categories map to CLI exit codes:
//   input  -> 2 (missing/unreadable/corrupt input files)
//   config -> 3 (parameter or precondition violations)
//   numeric -> 4 (degenerate data, failed computations)
enum class error_category
{
    input,
    config,
    numeric
};

class error : public std::runtime_error
{
  public:
    error(error_category category, std::string kind, const std::string &message)
        : std::runtime_error(message), category_(category), kind_(std::move(kind))
    {
    }

    error_category category() const noexcept { return category_; }

    /// Stable machine-readable identifier, e.g. "bad-magic" or "input-not-found".
    const std::string &kind() const noexcept { return kind_; }

    int exit_code() const noexcept
    {
        switch (category_)
        {
        case error_category::input:
            return 2;
        case error_category::config:
            return 3;
        case error_category::numeric:
            return 4;
        }
        return 1;
    }

  private:
    error_category category_;
    std::string kind_;
};

inline error input_error(const std::string &kind, const std::string &message)
{
    return error(error_category::input, kind, message);
}

inline error config_error(const std::string &kind, const std::string &message)
{
    return error(error_category::config, kind, message);
}

inline error numeric_error(const std::string &kind, const std::string &message)
{
    return error(error_category::numeric, kind, message);
}

} // namespace lsfkit

#endif
