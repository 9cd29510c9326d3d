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

#ifndef HYBRID_SCENARIO_HPP
#define HYBRID_SCENARIO_HPP

#include "hybrid/channel.hpp"
#include "hybrid/system_config.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hybrid
{
    enum class Architecture
    {
        Hybrid,
        FullyDigital // one RF chain per antenna, ZF on the raw channel
    };

    enum class CodebookChoice
    {
        Perfect,
        Rvq,
        Corr
    };

    enum class PrecoderKind
    {
        Zf,
        Mrt
    };

    // Where the correlation matrix shaping the corr codebook comes from.
    enum class Shaping
    {
        Theoretical,
        Empirical
    };

    enum class SweepParameter
    {
        M,
        K,
        B2,
        SnrDb
    };

    struct Sweep
    {
        SweepParameter parameter = SweepParameter::SnrDb;
        std::vector<double> values;
    };

    struct ScenarioConfig
    {
        std::string scenario_id = "scenario";
        Architecture architecture = Architecture::Hybrid;
        Structure structure = Structure::Sub;
        std::size_t antennas = 64;
        std::size_t users = 4;
        AnalogBits analog_bits = 3;
        FeedbackBits feedback_bits;
        ChannelModel channel = RayleighModel{};
        CodebookChoice codebook = CodebookChoice::Perfect;
        PrecoderKind precoder = PrecoderKind::Zf;
        std::vector<double> snr_db;
        std::optional<Sweep> sweep;
        std::size_t trials = 2000;
        std::uint64_t master_seed = 1;
        bool fixed_codebook = false; // one codebook per user for all trials instead of one per trial
        Shaping shaping = Shaping::Theoretical;

        // Checks every point the sweep expands to. Throws ConfigError naming the field.
        void validate() const;
    };

    // One (M, K, B2) combination of a scenario with every SNR evaluated on it.
    struct ScenarioPoint
    {
        SystemConfig system; // power is unused; see snr_db
        std::vector<double> snr_db;
        double sweep_value = 0.0; // value of the swept parameter, or 0 when there is no sweep
    };

    std::vector<ScenarioPoint> expand_points(const ScenarioConfig &sc);

    // JSON text in, validated config out. Unknown keys and type errors raise ConfigError with
    // the JSON path of the offending field.
    ScenarioConfig parse_scenario(std::string_view json_text);
    ScenarioConfig load_scenario(const std::filesystem::path &path);
    std::string scenario_to_json(const ScenarioConfig &sc);

    std::string to_string(Architecture a);
    std::string to_string(CodebookChoice c);
    std::string to_string(PrecoderKind p);
    std::string to_string(SweepParameter p);
    std::string channel_name(const ChannelModel &model);
}

#endif
