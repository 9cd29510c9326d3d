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

#ifndef HYBRID_CSV_HPP
#define HYBRID_CSV_HPP

#include "hybrid/runner.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

namespace hybrid
{
    // RFC 4180: CRLF line ends, fields quoted only when they contain a comma, quote or line break.
    std::string csv_escape(std::string_view field);

    // 9 significant digits; empty for nullopt.
    std::string format_number(double v);
    std::string format_number(const std::optional<double> &v);

    // Header with the ResultRow field names, then one record per row.
    void write_csv(std::ostream &os, std::span<const ResultRow> rows);
    void write_csv(const std::filesystem::path &path, std::span<const ResultRow> rows);
}

#endif
