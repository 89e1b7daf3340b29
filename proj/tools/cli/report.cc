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

#include "report.h"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qsdc/qcore/errors.h"

namespace qsdc::cli {

namespace {

std::string cell(const nlohmann::json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

void flatten(const nlohmann::json& j, const std::string& prefix, std::vector<std::string>& keys,
             std::vector<nlohmann::json>& values) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            flatten(v, prefix.empty() ? k : prefix + "." + k, keys, values);
        }
        return;
    }
    keys.push_back(prefix);
    values.push_back(j);
}

}  // namespace

nlohmann::json Table::to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json r = nlohmann::json::object();
        for (std::size_t i = 0; i < columns.size(); i++) r[columns[i]] = row[i];
        out.push_back(r);
    }
    return out;
}

Format parse_format(const std::string& s) {
    if (s == "auto") return Format::kAuto;
    if (s == "json") return Format::kJson;
    if (s == "csv") return Format::kCsv;
    throw ConfigError("unknown output format '" + s + "' (json, csv)");
}

std::string Report::render_json() const {
    nlohmann::json j = {{"command", command}, {"config", config}, {"seed", seed}, {"ok", ok}};
    nlohmann::json res = results;
    if (table) {
        res["rows"] = table->to_json();
    }
    j["results"] = res;
    j["wall_time_s"] = wall_time_s;
    return j.dump(2) + "\n";
}

std::string Report::render_csv() const {
    std::vector<std::string> lead{"seed"};
    std::vector<nlohmann::json> lead_values{seed};
    for (const auto& [k, v] : config.items()) {
        if (k != "seed" && v.is_primitive()) {
            lead.push_back(k);
            lead_values.push_back(v);
        }
    }
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;
    if (table) {
        columns = table->columns;
        rows = table->rows;
    } else {
        std::vector<nlohmann::json> values;
        flatten(results, "", columns, values);
        rows.push_back(values);
    }
    std::ostringstream out;
    bool first = true;
    for (const auto& c : lead) {
        out << (first ? "" : ",") << cell(c);
        first = false;
    }
    for (const auto& c : columns) out << "," << cell(c);
    out << "\n";
    for (const auto& row : rows) {
        first = true;
        for (const auto& v : lead_values) {
            out << (first ? "" : ",") << cell(v);
            first = false;
        }
        for (const auto& v : row) out << "," << cell(v);
        out << "\n";
    }
    return out.str();
}

void write_atomically(const std::string& path, const std::string& contents, std::ostream& console) {
    if (path.empty() || path == "-") {
        console << contents;
        console.flush();
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        f << contents;
        f.flush();
        if (!f) {
            throw std::runtime_error("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot rename onto " + path + ": " + ec.message());
    }
}

}  // namespace qsdc::cli
