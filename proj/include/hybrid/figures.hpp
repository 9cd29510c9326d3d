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

#ifndef HYBRID_FIGURES_HPP
#define HYBRID_FIGURES_HPP

#include "hybrid/runner.hpp"
#include "hybrid/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hybrid
{
    inline constexpr std::size_t kDefaultFigureTrials = 2000;

    // fig2 .. fig8
    std::vector<std::string> figure_names();

    // Scenarios making up a preset. Throws UnknownFigure for any other name.
    std::vector<ScenarioConfig> figure_scenarios(std::string_view name, std::size_t trials = kDefaultFigureTrials,
                                                 std::uint64_t seed = 1);

    struct FigureData
    {
        std::string name;
        std::string x_column; // snr_db, K or M
        std::vector<ResultRow> rows;
        std::vector<std::string> notes; // written as comments into the plot data
    };

    FigureData reproduce_figure(std::string_view name, std::size_t trials = kDefaultFigureTrials,
                                std::uint64_t seed = 1, const RunOptions &opts = {});

    // Writes <name>.csv, <name>.dat (one gnuplot index block per series) and <name>.gp into dir.
    void write_figure(const FigureData &fig, const std::filesystem::path &dir);

    // Rows of one series, i.e. one scenario_id (and one SNR when the x axis is not SNR).
    struct FigureSeries
    {
        std::string label;
        std::vector<const ResultRow *> rows; // ordered by x
    };

    std::vector<FigureSeries> figure_series(const FigureData &fig);
    double figure_x(const FigureData &fig, const ResultRow &row);
}

#endif
