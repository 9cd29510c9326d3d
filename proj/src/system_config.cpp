// SPDX-License-Identifier: Apache-2.0
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

#include "hybrid/system_config.hpp"
#include "hybrid/errors.hpp"

#include <cmath>

namespace hybrid
{
    void SystemConfig::validate() const
    {
        if (users < 1)
            throw ConfigError("K: must be at least 1");
        if (antennas < users)
            throw ConfigError("M: must be >= K (M=" + std::to_string(antennas) + ", K=" + std::to_string(users) + ")");
        if (!(power > 0.0) || !std::isfinite(power))
            throw ConfigError("P: must be positive and finite");
        if (analog_bits && (*analog_bits < 1 || *analog_bits > 30))
            throw ConfigError("B1: must be in [1, 30] or ideal");
        if (feedback_bits && (*feedback_bits < 1 || *feedback_bits > 24))
            throw ConfigError("B2: must be in [1, 24] or perfect");
        if (structure == Structure::Sub && antennas % users != 0)
            throw ConfigError("M: sub-connected structure requires K to divide M (M=" + std::to_string(antennas) +
                              ", K=" + std::to_string(users) + ")");
    }

    std::size_t SystemConfig::antennas_per_chain() const
    {
        return structure == Structure::Sub ? antennas / users : antennas;
    }

    std::string to_string(Structure s)
    {
        return s == Structure::Sub ? "sub" : "full";
    }

    Structure parse_structure(std::string_view text)
    {
        if (text == "sub")
            return Structure::Sub;
        if (text == "full")
            return Structure::Full;
        throw ConfigError("structure: expected \"sub\" or \"full\", got \"" + std::string(text) + "\"");
    }

    std::string to_string(CodebookKind k)
    {
        return k == CodebookKind::Rvq ? "rvq" : "corr";
    }

    double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
}
