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

#include "hybrid/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace hybrid
{
    std::string csv_escape(std::string_view field)
    {
        if (field.find_first_of(",\"\r\n") == std::string_view::npos)
            return std::string(field);
        std::string out = "\"";
        for (const char c : field)
        {
            if (c == '"')
                out += '"';
            out += c;
        }
        out += '"';
        return out;
    }

    std::string format_number(double v)
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.9g", v);
        return buf;
    }

    std::string format_number(const std::optional<double> &v)
    {
        return v ? format_number(*v) : std::string();
    }

    void write_csv(std::ostream &os, std::span<const ResultRow> rows)
    {
        os << "scenario_id,structure,channel,codebook,precoder,M,K,B1,B2,snr_db,trials,mean_sum_rate,"
              "stderr_sum_rate,mean_user_rate,theory_rate,theory_loss_bound,theory_net_rate,degenerate_count\r\n";
        for (const ResultRow &r : rows)
        {
            os << csv_escape(r.scenario_id) << ',' << csv_escape(r.structure) << ',' << csv_escape(r.channel) << ','
               << csv_escape(r.codebook) << ',' << csv_escape(r.precoder) << ',' << r.M << ',' << r.K << ','
               << csv_escape(r.B1) << ',' << csv_escape(r.B2) << ',' << format_number(r.snr_db) << ',' << r.trials
               << ',' << format_number(r.mean_sum_rate) << ',' << format_number(r.stderr_sum_rate) << ','
               << format_number(r.mean_user_rate) << ',' << format_number(r.theory_rate) << ','
               << format_number(r.theory_loss_bound) << ',' << format_number(r.theory_net_rate) << ','
               << r.degenerate_count << "\r\n";
        }
    }

    void write_csv(const std::filesystem::path &path, std::span<const ResultRow> rows)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + path.string());
        write_csv(out, rows);
        if (!out)
            throw std::runtime_error("write failed: " + path.string());
    }
}
