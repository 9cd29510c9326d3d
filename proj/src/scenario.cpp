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

#include "hybrid/scenario.hpp"
#include "hybrid/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace hybrid
{
    using nlohmann::json;

    namespace
    {
        [[noreturn]] void fail(const std::string &field, const std::string &what)
        {
            throw ConfigError(field + ": " + what);
        }

        void reject_unknown(const json &obj, const std::string &where, const std::set<std::string> &allowed)
        {
            for (auto it = obj.begin(); it != obj.end(); ++it)
                if (!allowed.count(it.key()))
                    fail(where.empty() ? it.key() : where + "." + it.key(), "unknown key");
        }

        std::string get_string(const json &v, const std::string &field)
        {
            if (!v.is_string())
                fail(field, "expected a string");
            return v.get<std::string>();
        }

        double get_number(const json &v, const std::string &field)
        {
            if (!v.is_number())
                fail(field, "expected a number");
            const double x = v.get<double>();
            if (!std::isfinite(x))
                fail(field, "must be finite");
            return x;
        }

        std::uint64_t get_unsigned(const json &v, const std::string &field)
        {
            if (v.is_number_unsigned())
                return v.get<std::uint64_t>();
            if (v.is_number_integer())
                fail(field, "must be non-negative");
            fail(field, "expected an integer");
        }

        std::size_t get_count(const json &v, const std::string &field)
        {
            const std::uint64_t x = get_unsigned(v, field);
            if (x == 0)
                fail(field, "must be positive");
            return static_cast<std::size_t>(x);
        }

        // Integer-valued sweep entries may arrive as 64 or 64.0.
        std::size_t as_count(double x, const std::string &field)
        {
            if (x < 1.0 || x != std::floor(x) || x > 1e9)
                fail(field, "expected a positive integer, got " + std::to_string(x));
            return static_cast<std::size_t>(x);
        }

        AnalogBits parse_b1(const json &v)
        {
            if (v.is_string())
            {
                if (v.get<std::string>() == "ideal")
                    return std::nullopt;
                fail("B1", "expected an integer or \"ideal\"");
            }
            return static_cast<int>(get_count(v, "B1"));
        }

        FeedbackBits parse_b2(const json &v)
        {
            if (v.is_string())
            {
                if (v.get<std::string>() == "perfect")
                    return std::nullopt;
                fail("B2", "expected an integer or \"perfect\"");
            }
            return static_cast<int>(get_count(v, "B2"));
        }

        ChannelModel parse_channel(const json &v)
        {
            if (v.is_string())
            {
                const std::string s = v.get<std::string>();
                if (s == "rayleigh")
                    return RayleighModel{};
                if (s == "mmwave")
                    return MmWaveModel{};
                fail("channel", "expected \"rayleigh\" or \"mmwave\"");
            }
            if (!v.is_object())
                fail("channel", "expected an object or a model name");
            if (!v.contains("model"))
                fail("channel.model", "missing");
            const std::string model = get_string(v["model"], "channel.model");
            if (model == "rayleigh")
            {
                reject_unknown(v, "channel", {"model"});
                return RayleighModel{};
            }
            if (model != "mmwave")
                fail("channel.model", "expected \"rayleigh\" or \"mmwave\", got \"" + model + "\"");
            reject_unknown(v, "channel", {"model", "L", "d_over_lambda"});
            MmWaveModel m;
            if (v.contains("L"))
            {
                if (!v["L"].is_number_integer() || v["L"].get<long long>() < 1)
                    throw InvalidPathCount("channel.L: must be an integer >= 1");
                m.paths = v["L"].get<std::size_t>();
            }
            if (v.contains("d_over_lambda"))
            {
                m.d_over_lambda = get_number(v["d_over_lambda"], "channel.d_over_lambda");
                if (!(m.d_over_lambda > 0.0))
                    fail("channel.d_over_lambda", "must be positive");
            }
            return m;
        }

        template <typename E>
        E parse_enum(const json &v, const std::string &field, std::initializer_list<std::pair<const char *, E>> options)
        {
            const std::string s = get_string(v, field);
            std::string expected;
            for (const auto &[name, value] : options)
            {
                if (s == name)
                    return value;
                expected += (expected.empty() ? "\"" : ", \"") + std::string(name) + "\"";
            }
            fail(field, "expected one of " + expected + ", got \"" + s + "\"");
        }

        std::vector<double> parse_number_list(const json &v, const std::string &field)
        {
            if (!v.is_array() || v.empty())
                fail(field, "expected a non-empty array of numbers");
            std::vector<double> out;
            for (std::size_t i = 0; i < v.size(); ++i)
                out.push_back(get_number(v[i], field + "[" + std::to_string(i) + "]"));
            return out;
        }

        json bits_json(const std::optional<int> &b, const char *none)
        {
            return b ? json(*b) : json(none);
        }
    }

    std::string to_string(Architecture a) { return a == Architecture::Hybrid ? "hybrid" : "fully_digital"; }

    std::string to_string(CodebookChoice c)
    {
        switch (c)
        {
        case CodebookChoice::Perfect:
            return "perfect";
        case CodebookChoice::Rvq:
            return "rvq";
        case CodebookChoice::Corr:
            return "corr";
        }
        return "?";
    }

    std::string to_string(PrecoderKind p) { return p == PrecoderKind::Zf ? "zf" : "mrt"; }

    std::string to_string(SweepParameter p)
    {
        switch (p)
        {
        case SweepParameter::M:
            return "M";
        case SweepParameter::K:
            return "K";
        case SweepParameter::B2:
            return "B2";
        case SweepParameter::SnrDb:
            return "snr_db";
        }
        return "?";
    }

    std::string channel_name(const ChannelModel &model)
    {
        return std::holds_alternative<RayleighModel>(model) ? "rayleigh" : "mmwave";
    }

    std::vector<ScenarioPoint> expand_points(const ScenarioConfig &sc)
    {
        SystemConfig base;
        base.antennas = sc.antennas;
        base.users = sc.users;
        base.analog_bits = sc.analog_bits;
        base.feedback_bits = sc.feedback_bits;
        base.structure = sc.architecture == Architecture::Hybrid ? sc.structure : Structure::Full;

        std::vector<ScenarioPoint> points;
        if (!sc.sweep || sc.sweep->parameter == SweepParameter::SnrDb)
        {
            points.push_back({base, sc.sweep ? sc.sweep->values : sc.snr_db, 0.0});
            return points;
        }
        const std::string field = "sweep.values";
        for (const double v : sc.sweep->values)
        {
            ScenarioPoint p{base, sc.snr_db, v};
            switch (sc.sweep->parameter)
            {
            case SweepParameter::M:
                p.system.antennas = as_count(v, field);
                break;
            case SweepParameter::K:
                p.system.users = as_count(v, field);
                break;
            case SweepParameter::B2:
                p.system.feedback_bits = static_cast<int>(as_count(v, field));
                break;
            case SweepParameter::SnrDb:
                break;
            }
            points.push_back(std::move(p));
        }
        return points;
    }

    void ScenarioConfig::validate() const
    {
        if (scenario_id.empty())
            fail("scenario_id", "must not be empty");
        if (trials < 1)
            fail("trials", "must be >= 1");
        if (const auto *mm = std::get_if<MmWaveModel>(&channel))
        {
            if (mm->paths < 1)
                throw InvalidPathCount("channel.L: must be >= 1");
            if (!(mm->d_over_lambda > 0.0))
                fail("channel.d_over_lambda", "must be positive");
        }

        const bool sweeps_b2 = sweep && sweep->parameter == SweepParameter::B2;
        if (sweep && sweep->values.empty())
            fail("sweep.values", "must not be empty");
        if (sweep && sweep->parameter == SweepParameter::SnrDb)
        {
            if (!snr_db.empty())
                fail("snr_db", "must be omitted when sweep.parameter is \"snr_db\"");
        }
        else if (snr_db.empty())
            fail("snr_db", "must list at least one SNR point");
        for (const double s : sweep && sweep->parameter == SweepParameter::SnrDb ? sweep->values : snr_db)
            if (!std::isfinite(s))
                fail("snr_db", "values must be finite");

        if (architecture == Architecture::FullyDigital)
        {
            if (codebook != CodebookChoice::Perfect || feedback_bits || sweeps_b2)
                fail("codebook", "the fully_digital baseline uses perfect feedback only");
            if (precoder != PrecoderKind::Zf)
                fail("precoder", "the fully_digital baseline is zero-forcing only");
        }
        else if (codebook == CodebookChoice::Perfect)
        {
            if (feedback_bits)
                fail("B2", "must be \"perfect\" or omitted when codebook is \"perfect\"");
            if (sweeps_b2)
                fail("sweep.parameter", "cannot sweep B2 with a perfect codebook");
        }
        else if (!feedback_bits && !sweeps_b2)
            fail("B2", "an integer bit count is required for codebook \"" + to_string(codebook) + "\"");

        for (const ScenarioPoint &p : expand_points(*this))
        {
            SystemConfig cfg = p.system;
            cfg.power = 1.0;
            try
            {
                cfg.validate();
            }
            catch (const ConfigError &e)
            {
                if (sweep && sweep->parameter != SweepParameter::SnrDb)
                    throw ConfigError(std::string(e.what()) + " (at sweep value " + to_string(sweep->parameter) +
                                      "=" + std::to_string(p.sweep_value) + ")");
                throw;
            }
            if (codebook != CodebookChoice::Perfect && p.system.users < 2)
                fail("K", "quantized feedback needs K >= 2");
        }
    }

    ScenarioConfig parse_scenario(std::string_view json_text)
    {
        json j;
        try
        {
            j = json::parse(json_text);
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError(std::string("config: malformed JSON: ") + e.what());
        }
        if (!j.is_object())
            fail("config", "top level must be a JSON object");

        reject_unknown(j, "",
                       {"scenario_id", "architecture", "structure", "M", "K", "B1", "B2", "channel", "codebook",
                        "precoder", "snr_db", "sweep", "trials", "master_seed", "fixed_codebook", "shaping"});

        ScenarioConfig sc;
        if (j.contains("scenario_id"))
            sc.scenario_id = get_string(j["scenario_id"], "scenario_id");
        if (j.contains("architecture"))
            sc.architecture = parse_enum<Architecture>(
                j["architecture"], "architecture",
                {{"hybrid", Architecture::Hybrid}, {"fully_digital", Architecture::FullyDigital}});
        if (j.contains("structure"))
            sc.structure = parse_structure(get_string(j["structure"], "structure"));
        else if (sc.architecture == Architecture::Hybrid)
            fail("structure", "missing");

        if (!j.contains("M"))
            fail("M", "missing");
        sc.antennas = get_count(j["M"], "M");
        if (!j.contains("K"))
            fail("K", "missing");
        sc.users = get_count(j["K"], "K");
        if (j.contains("B1"))
            sc.analog_bits = parse_b1(j["B1"]);
        if (j.contains("B2"))
            sc.feedback_bits = parse_b2(j["B2"]);
        if (j.contains("channel"))
            sc.channel = parse_channel(j["channel"]);
        if (j.contains("codebook"))
            sc.codebook = parse_enum<CodebookChoice>(
                j["codebook"], "codebook",
                {{"perfect", CodebookChoice::Perfect}, {"rvq", CodebookChoice::Rvq}, {"corr", CodebookChoice::Corr}});
        if (j.contains("precoder"))
            sc.precoder =
                parse_enum<PrecoderKind>(j["precoder"], "precoder", {{"zf", PrecoderKind::Zf}, {"mrt", PrecoderKind::Mrt}});
        if (j.contains("snr_db"))
            sc.snr_db = parse_number_list(j["snr_db"], "snr_db");
        if (j.contains("sweep"))
        {
            const json &s = j["sweep"];
            if (!s.is_object())
                fail("sweep", "expected an object");
            reject_unknown(s, "sweep", {"parameter", "values"});
            if (!s.contains("parameter"))
                fail("sweep.parameter", "missing");
            if (!s.contains("values"))
                fail("sweep.values", "missing");
            Sweep sw;
            sw.parameter = parse_enum<SweepParameter>(s["parameter"], "sweep.parameter",
                                                      {{"M", SweepParameter::M},
                                                       {"K", SweepParameter::K},
                                                       {"B2", SweepParameter::B2},
                                                       {"snr_db", SweepParameter::SnrDb}});
            sw.values = parse_number_list(s["values"], "sweep.values");
            sc.sweep = std::move(sw);
        }
        if (j.contains("trials"))
            sc.trials = get_count(j["trials"], "trials");
        if (j.contains("master_seed"))
            sc.master_seed = get_unsigned(j["master_seed"], "master_seed");
        if (j.contains("fixed_codebook"))
        {
            if (!j["fixed_codebook"].is_boolean())
                fail("fixed_codebook", "expected true or false");
            sc.fixed_codebook = j["fixed_codebook"].get<bool>();
        }
        if (j.contains("shaping"))
            sc.shaping = parse_enum<Shaping>(j["shaping"], "shaping",
                                             {{"theoretical", Shaping::Theoretical}, {"empirical", Shaping::Empirical}});

        sc.validate();
        return sc;
    }

    ScenarioConfig load_scenario(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ConfigError("config: cannot open " + path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_scenario(ss.str());
    }

    std::string scenario_to_json(const ScenarioConfig &sc)
    {
        json j;
        j["scenario_id"] = sc.scenario_id;
        j["architecture"] = to_string(sc.architecture);
        j["structure"] = to_string(sc.structure);
        j["M"] = sc.antennas;
        j["K"] = sc.users;
        j["B1"] = bits_json(sc.analog_bits, "ideal");
        j["B2"] = bits_json(sc.feedback_bits, "perfect");
        if (const auto *mm = std::get_if<MmWaveModel>(&sc.channel))
            j["channel"] = {{"model", "mmwave"}, {"L", mm->paths}, {"d_over_lambda", mm->d_over_lambda}};
        else
            j["channel"] = {{"model", "rayleigh"}};
        j["codebook"] = to_string(sc.codebook);
        j["precoder"] = to_string(sc.precoder);
        if (!sc.snr_db.empty())
            j["snr_db"] = sc.snr_db;
        if (sc.sweep)
            j["sweep"] = {{"parameter", to_string(sc.sweep->parameter)}, {"values", sc.sweep->values}};
        j["trials"] = sc.trials;
        j["master_seed"] = sc.master_seed;
        j["fixed_codebook"] = sc.fixed_codebook;
        j["shaping"] = sc.shaping == Shaping::Theoretical ? "theoretical" : "empirical";
        return j.dump(2);
    }
}
