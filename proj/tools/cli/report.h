// Copyright 2026 The QSDC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSDC_TOOLS_CLI_REPORT_H
#define QSDC_TOOLS_CLI_REPORT_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsdc/netsim/event_log.h"

namespace qsdc::cli {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;

    nlohmann::json to_json() const;
};

enum class Format { kAuto, kJson, kCsv };

Format parse_format(const std::string& s);

struct Report {
    std::string command;
    nlohmann::json config = nlohmann::json::object();
    std::uint64_t seed = 0;
    nlohmann::json results = nlohmann::json::object();
    std::optional<Table> table;
    std::optional<netsim::EventLog> log;
    bool ok = true;  // false: an invariant the command checks was violated
    double wall_time_s = 0;

    std::string render_json() const;
    /// Header row, then one row per table row (or one row of flattened
    /// results). Config scalars lead every row.
    std::string render_csv() const;
};

/// Writes `path` via a sibling temporary file and a rename; "-" or empty
/// means `console`.
void write_atomically(const std::string& path, const std::string& contents, std::ostream& console);

}  // namespace qsdc::cli

#endif  // QSDC_TOOLS_CLI_REPORT_H
