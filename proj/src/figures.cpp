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

#include "hybrid/figures.hpp"
#include "hybrid/csv.hpp"
#include "hybrid/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

namespace hybrid
{
    namespace
    {
        const std::vector<double> kSnrGrid = {-10, -5, 0, 5, 10, 15, 20, 25, 30};
        const std::vector<double> kAntennaGrid = {32, 64, 128, 256, 512};

        ScenarioConfig base(std::string id, Structure s, std::size_t trials, std::uint64_t seed)
        {
            ScenarioConfig sc;
            sc.scenario_id = std::move(id);
            sc.structure = s;
            sc.trials = trials;
            sc.master_seed = seed;
            sc.analog_bits = 3;
            return sc;
        }

        std::string tag(Structure s) { return to_string(s); }

        void snr_sweep(ScenarioConfig &sc) { sc.sweep = Sweep{SweepParameter::SnrDb, kSnrGrid}; }

        void quantized(ScenarioConfig &sc, CodebookChoice c, int bits)
        {
            sc.codebook = c;
            sc.feedback_bits = bits;
        }

        std::string x_column_of(std::string_view name)
        {
            if (name == "fig4")
                return "K";
            if (name == "fig6" || name == "fig8")
                return "M";
            return "snr_db";
        }

        std::string dat_number(const std::optional<double> &v)
        {
            return v && std::isfinite(*v) ? format_number(*v) : "NaN";
        }
    }

    std::vector<std::string> figure_names() { return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"}; }

    std::vector<ScenarioConfig> figure_scenarios(std::string_view name, std::size_t trials, std::uint64_t seed)
    {
        std::vector<ScenarioConfig> out;
        const Structure both[] = {Structure::Sub, Structure::Full};

        if (name == "fig2")
        {
            for (const Structure s : both)
            {
                ScenarioConfig sc = base("fig2-" + tag(s), s, trials, seed);
                snr_sweep(sc);
                out.push_back(sc);
            }
            ScenarioConfig d = base("fig2-digital", Structure::Sub, trials, seed);
            d.architecture = Architecture::FullyDigital;
            snr_sweep(d);
            out.push_back(d);
        }
        else if (name == "fig3")
        {
            for (const Structure s : both)
                for (const PrecoderKind p : {PrecoderKind::Zf, PrecoderKind::Mrt})
                {
                    ScenarioConfig sc = base("fig3-" + tag(s) + "-" + to_string(p), s, trials, seed);
                    quantized(sc, CodebookChoice::Corr, 10);
                    sc.precoder = p;
                    snr_sweep(sc);
                    out.push_back(sc);
                }
        }
        else if (name == "fig4")
        {
            for (const Structure s : both)
            {
                ScenarioConfig sc = base("fig4-" + tag(s), s, trials, seed);
                sc.antennas = 120;
                sc.snr_db = {20.0};
                sc.sweep = Sweep{SweepParameter::K, {2, 3, 4, 5, 6, 8, 10, 12}};
                out.push_back(sc);
            }
        }
        else if (name == "fig5")
        {
            for (const Structure s : both)
                for (const CodebookChoice c : {CodebookChoice::Perfect, CodebookChoice::Corr})
                {
                    ScenarioConfig sc = base("fig5-" + tag(s) + "-" + to_string(c), s, trials, seed);
                    sc.users = 8;
                    if (c != CodebookChoice::Perfect)
                        quantized(sc, c, 6);
                    snr_sweep(sc);
                    out.push_back(sc);
                }
        }
        else if (name == "fig6")
        {
            for (const Structure s : both)
                for (const CodebookChoice c : {CodebookChoice::Corr, CodebookChoice::Rvq})
                    for (const int b2 : {5, 10})
                    {
                        ScenarioConfig sc =
                            base("fig6-" + tag(s) + "-" + to_string(c) + "-b" + std::to_string(b2), s, trials, seed);
                        sc.users = 8;
                        quantized(sc, c, b2);
                        sc.snr_db = {25.0};
                        sc.sweep = Sweep{SweepParameter::M, kAntennaGrid};
                        out.push_back(sc);
                    }
        }
        else if (name == "fig7")
        {
            for (const Structure s : both)
                for (const CodebookChoice c : {CodebookChoice::Corr, CodebookChoice::Rvq})
                {
                    ScenarioConfig sc = base("fig7-" + tag(s) + "-" + to_string(c), s, trials, seed);
                    sc.users = 8;
                    sc.channel = MmWaveModel{10, 0.5};
                    quantized(sc, c, 10);
                    snr_sweep(sc);
                    out.push_back(sc);
                }
        }
        else if (name == "fig8")
        {
            for (const Structure s : both)
            {
                ScenarioConfig sc = base("fig8-" + tag(s), s, trials, seed);
                sc.users = 8;
                sc.channel = MmWaveModel{10, 0.5};
                quantized(sc, CodebookChoice::Corr, 10);
                sc.snr_db = {0, 10, 20, 30};
                sc.sweep = Sweep{SweepParameter::M, kAntennaGrid};
                out.push_back(sc);
            }
        }
        else
        {
            throw UnknownFigure("figure: unknown name \"" + std::string(name) + "\" (expected fig2 .. fig8)");
        }

        for (const ScenarioConfig &sc : out)
            sc.validate();
        return out;
    }

    FigureData reproduce_figure(std::string_view name, std::size_t trials, std::uint64_t seed, const RunOptions &opts)
    {
        FigureData fig;
        fig.name = std::string(name);
        fig.x_column = x_column_of(name);
        for (const ScenarioConfig &sc : figure_scenarios(name, trials, seed))
        {
            const std::vector<ResultRow> rows = run_scenario(sc, opts);
            fig.rows.insert(fig.rows.end(), rows.begin(), rows.end());
        }
        if (name == "fig2")
            fig.notes.push_back("assumption: the fully-digital baseline is zero-forcing on the raw channel with "
                                "unit-norm per-user columns and no analog network or dissipation");
        if (name == "fig7" || name == "fig8")
            fig.notes.push_back("mmWave rows carry no theory overlay; theory columns are NaN");
        return fig;
    }

    double figure_x(const FigureData &fig, const ResultRow &row)
    {
        if (fig.x_column == "K")
            return static_cast<double>(row.K);
        if (fig.x_column == "M")
            return static_cast<double>(row.M);
        return row.snr_db;
    }

    std::vector<FigureSeries> figure_series(const FigureData &fig)
    {
        std::vector<FigureSeries> series;
        std::map<std::string, std::size_t> index;
        for (const ResultRow &row : fig.rows)
        {
            std::string label = row.scenario_id;
            if (fig.x_column != "snr_db")
                label += " snr=" + format_number(row.snr_db);
            auto [it, inserted] = index.try_emplace(label, series.size());
            if (inserted)
                series.push_back({label, {}});
            series[it->second].rows.push_back(&row);
        }
        for (FigureSeries &s : series)
            std::stable_sort(s.rows.begin(), s.rows.end(), [&](const ResultRow *a, const ResultRow *b) {
                return figure_x(fig, *a) < figure_x(fig, *b);
            });
        return series;
    }

    void write_figure(const FigureData &fig, const std::filesystem::path &dir)
    {
        std::filesystem::create_directories(dir);
        write_csv(dir / (fig.name + ".csv"), fig.rows);

        const std::vector<FigureSeries> series = figure_series(fig);
        {
            std::ofstream dat(dir / (fig.name + ".dat"), std::ios::binary);
            if (!dat)
                throw std::runtime_error("cannot write " + (dir / (fig.name + ".dat")).string());
            dat << "# " << fig.name << '\n';
            for (const std::string &n : fig.notes)
                dat << "# " << n << '\n';
            dat << "# columns: " << fig.x_column
                << " mean_sum_rate stderr_sum_rate mean_user_rate theory_rate theory_net_rate\n";
            for (std::size_t i = 0; i < series.size(); ++i)
            {
                if (i > 0)
                    dat << "\n\n";
                dat << "# index " << i << ": " << series[i].label << '\n';
                for (const ResultRow *r : series[i].rows)
                    dat << format_number(figure_x(fig, *r)) << ' ' << dat_number(r->mean_sum_rate) << ' '
                        << dat_number(r->stderr_sum_rate) << ' ' << dat_number(r->mean_user_rate) << ' '
                        << dat_number(r->theory_rate) << ' ' << dat_number(r->theory_net_rate) << '\n';
            }
        }

        std::ofstream gp(dir / (fig.name + ".gp"), std::ios::binary);
        if (!gp)
            throw std::runtime_error("cannot write " + (dir / (fig.name + ".gp")).string());
        gp << "# gnuplot " << fig.name << ".gp\n"
           << "set xlabel '" << fig.x_column << "'\n"
           << "set ylabel 'sum rate (bits/s/Hz)'\n"
           << "set key left top\n"
           << "set grid\n";
        if (fig.x_column == "M")
            gp << "set logscale x 2\n";
        gp << "plot \\\n";
        for (std::size_t i = 0; i < series.size(); ++i)
            gp << "  '" << fig.name << ".dat' index " << i << " using 1:2:3 with yerrorlines title '"
               << series[i].label << "'" << (i + 1 < series.size() ? ", \\\n" : "\n");
    }
}
