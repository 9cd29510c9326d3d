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

#ifndef HYBRID_SYSTEM_CONFIG_HPP
#define HYBRID_SYSTEM_CONFIG_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace hybrid
{
    // Sub: each RF chain drives its own block of antennas_per_chain() antennas.
    // Full: every RF chain drives every antenna through a combiner network.
    enum class Structure
    {
        Sub,
        Full
    };

    // RVQ: isotropic random codewords. CorrBased: RVQ vectors shaped by R^{1/2} of the
    // effective-channel correlation matrix.
    enum class CodebookKind
    {
        Rvq,
        CorrBased
    };

    // Phase-shifter resolution in bits; std::nullopt means ideal (unquantized) phases.
    using AnalogBits = std::optional<int>;

    // Feedback bits per user; std::nullopt means perfect (unquantized) feedback.
    using FeedbackBits = std::optional<int>;

    struct SystemConfig
    {
        std::size_t antennas = 64;    // M
        std::size_t users = 4;        // K, equal to the number of RF chains
        double power = 1.0;           // total transmit power P, linear; noise power is 1 so P is the SNR
        AnalogBits analog_bits = 3;   // B1
        FeedbackBits feedback_bits;   // B2
        Structure structure = Structure::Sub;

        // Throws ConfigError with the offending field named.
        void validate() const;

        // N = M / K for the sub-connected structure, M for the fully-connected one.
        std::size_t antennas_per_chain() const;
    };

    std::string to_string(Structure s);
    Structure parse_structure(std::string_view text);

    std::string to_string(CodebookKind k);

    double db_to_linear(double db);
    double linear_to_db(double linear);
}

#endif
