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
//
// hybrid-sim: Monte-Carlo runs, closed-form reports and figure presets.
//
//   hybrid-sim simulate --config scenario.json --out results.csv [--trials N] [--seed S] [--workers W]
//   hybrid-sim theory --json '{"M":64,"K":4,"P_db":25,"B1":3,"B2":10}'
//   hybrid-sim advise --m 64 --k 4 --p-db 25 --b1 3 --b2 6
//   hybrid-sim figure --name fig4 --out out/
//
// Exit codes: 0 success, 2 configuration error, 3 degenerate-trial threshold exceeded, 1 other.

#include "hybrid/closed_form.hpp"
#include "hybrid/csv.hpp"
#include "hybrid/errors.hpp"
#include "hybrid/figures.hpp"
#include "hybrid/runner.hpp"
#include "hybrid/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace
{
    using namespace hybrid;
    using nlohmann::json;

    constexpr int kExitConfig = 2;
    constexpr int kExitDegenerate = 3;

    std::string read_inline_or_file(const std::string &arg)
    {
        const auto first = arg.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && arg[first] == '{')
            return arg;
        std::ifstream in(arg, std::ios::binary);
        if (!in)
            throw ConfigError("json: not an object literal and not a readable file: " + arg);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    std::optional<int> bits_from_json(const json &v, const char *field, const char *none)
    {
        if (v.is_string() && v.get<std::string>() == none)
            return std::nullopt;
        if (!v.is_number_integer() || v.get<long long>() < 1)
            throw ConfigError(std::string(field) + ": expected a positive integer or \"" + none + "\"");
        return v.get<int>();
    }

    double number_from_json(const json &v, const char *field)
    {
        if (!v.is_number())
            throw ConfigError(std::string(field) + ": expected a number");
        return v.get<double>();
    }

    std::size_t count_from_json(const json &v, const char *field)
    {
        if (!v.is_number_unsigned() || v.get<std::size_t>() == 0)
            throw ConfigError(std::string(field) + ": expected a positive integer");
        return v.get<std::size_t>();
    }

    closed_form::TheoryInput parse_theory_input(const std::string &text)
    {
        json j;
        try
        {
            j = json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError(std::string("json: malformed: ") + e.what());
        }
        if (!j.is_object())
            throw ConfigError("json: expected an object");
        static const std::set<std::string> allowed = {"structure", "M", "K", "P_db", "B1", "B2", "rate_target",
                                                      "loss_target"};
        for (auto it = j.begin(); it != j.end(); ++it)
            if (!allowed.count(it.key()))
                throw ConfigError(it.key() + ": unknown key");

        closed_form::TheoryInput in;
        if (j.contains("structure"))
        {
            if (!j["structure"].is_string())
                throw ConfigError("structure: expected a string");
            in.structure = parse_structure(j["structure"].get<std::string>());
        }
        if (j.contains("M"))
            in.antennas = count_from_json(j["M"], "M");
        if (j.contains("K"))
            in.users = count_from_json(j["K"], "K");
        if (j.contains("P_db"))
            in.power_db = number_from_json(j["P_db"], "P_db");
        if (j.contains("B1"))
            in.analog_bits = bits_from_json(j["B1"], "B1", "ideal");
        if (j.contains("B2"))
        {
            if (j["B2"].is_string() && j["B2"].get<std::string>() == "perfect")
                in.feedback_bits.reset();
            else
                in.feedback_bits = number_from_json(j["B2"], "B2");
        }
        if (j.contains("rate_target"))
            in.rate_target = number_from_json(j["rate_target"], "rate_target");
        if (j.contains("loss_target"))
            in.loss_target = number_from_json(j["loss_target"], "loss_target");
        return in;
    }

    AnalogBits parse_b1_text(const std::string &s)
    {
        if (s == "ideal")
            return std::nullopt;
        try
        {
            std::size_t used = 0;
            const int v = std::stoi(s, &used);
            if (used == s.size() && v >= 1)
                return v;
        }
        catch (const std::exception &)
        {
        }
        throw ConfigError("B1: expected a positive integer or \"ideal\", got \"" + s + "\"");
    }

    int run_simulate(const std::string &config, const std::string &out, std::optional<std::size_t> trials,
                     std::optional<std::uint64_t> seed, std::size_t workers)
    {
        ScenarioConfig sc = load_scenario(config);
        if (trials)
        {
            if (*trials == 0)
                throw ConfigError("trials: must be >= 1");
            sc.trials = *trials;
        }
        if (seed)
            sc.master_seed = *seed;
        sc.validate();

        const std::vector<ResultRow> rows = run_scenario(sc, {workers});
        write_csv(std::filesystem::path(out), rows);

        std::size_t flagged = 0;
        for (const ResultRow &r : rows)
            if (degeneracy_flagged(r))
            {
                ++flagged;
                std::cerr << "degenerate trials: " << r.degenerate_count << " of " << r.trials << " at M=" << r.M
                          << " K=" << r.K << " snr_db=" << format_number(r.snr_db) << '\n';
            }
        if (flagged > 0)
            throw DegeneracyExceeded(std::to_string(flagged) + " row(s) reached the degenerate-trial threshold");
        std::cout << "wrote " << rows.size() << " rows to " << out << '\n';
        return 0;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Hybrid precoding simulator with quantized phases and limited feedback"};
    app.require_subcommand(1);

    std::string config, out;
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
    std::size_t workers = 0;
    auto *sim = app.add_subcommand("simulate", "Run a Monte-Carlo scenario and write CSV results");
    sim->add_option("--config", config, "Scenario JSON file")->required();
    sim->add_option("--out", out, "Output CSV path")->required();
    sim->add_option("--trials", trials, "Override the trial count");
    sim->add_option("--seed", seed, "Override the master seed");
    sim->add_option("--workers", workers, "Worker threads (0: all cores)");

    std::string theory_json;
    auto *theory = app.add_subcommand("theory", "Evaluate the closed-form expressions");
    theory->add_option("--json", theory_json, "Inline JSON object or path to one")->required();

    std::size_t adv_m = 64, adv_k = 4;
    double adv_p = 25.0, adv_b2 = 10.0;
    std::string adv_b1 = "3";
    auto *advise = app.add_subcommand("advise", "Structure choice and amplifier-gain threshold");
    advise->add_option("--m", adv_m, "Antennas M")->required();
    advise->add_option("--k", adv_k, "Users K")->required();
    advise->add_option("--p-db", adv_p, "Transmit SNR in dB")->required();
    advise->add_option("--b1", adv_b1, "Phase-shifter bits or 'ideal'")->required();
    advise->add_option("--b2", adv_b2, "Feedback bits per user")->required();

    std::string fig_name, fig_out;
    std::size_t fig_trials = kDefaultFigureTrials;
    std::uint64_t fig_seed = 1;
    auto *figure = app.add_subcommand("figure", "Reproduce a figure preset (fig2 .. fig8)");
    figure->add_option("--name", fig_name, "Preset name")->required();
    figure->add_option("--out", fig_out, "Output directory")->required();
    figure->add_option("--trials", fig_trials, "Trials per point");
    figure->add_option("--seed", fig_seed, "Master seed");
    figure->add_option("--workers", workers, "Worker threads (0: all cores)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try
    {
        if (*sim)
            return run_simulate(config, out, trials, seed, workers);
        if (*theory)
        {
            const auto report = closed_form::theory_report(parse_theory_input(read_inline_or_file(theory_json)));
            std::cout << closed_form::format_report(report);
            return 0;
        }
        if (*advise)
        {
            const auto report = closed_form::advise_report(adv_m, adv_k, adv_p, parse_b1_text(adv_b1), adv_b2);
            std::cout << closed_form::format_report(report);
            return 0;
        }
        if (*figure)
        {
            if (fig_trials == 0)
                throw ConfigError("trials: must be >= 1");
            const FigureData fig = reproduce_figure(fig_name, fig_trials, fig_seed, {workers});
            write_figure(fig, fig_out);
            std::cout << "wrote " << fig.name << ".csv, " << fig.name << ".dat, " << fig.name << ".gp to " << fig_out
                      << '\n';
            return 0;
        }
    }
    catch (const ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (const DegeneracyExceeded &e)
    {
        std::cerr << "numerical degeneracy: " << e.what() << '\n';
        return kExitDegenerate;
    }
    catch (const std::domain_error &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
