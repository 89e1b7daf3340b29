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

#include "qsdc/netsim/event_log.h"

#include <array>
#include <istream>
#include <ostream>

#include "qsdc/qcore/errors.h"

namespace qsdc::netsim {

namespace {

constexpr std::array<std::pair<EventKind, std::string_view>, 8> kKindNames = {{
    {EventKind::kSend, "SEND"},
    {EventKind::kDeliver, "DELIVER"},
    {EventKind::kIntercept, "INTERCEPT"},
    {EventKind::kMeasure, "MEASURE"},
    {EventKind::kOperation, "OPERATION"},
    {EventKind::kDecision, "DECISION"},
    {EventKind::kAbort, "ABORT"},
    {EventKind::kHalt, "HALT"},
}};

}  // namespace

std::string_view to_string(EventKind k) {
    for (const auto& [kind, name] : kKindNames) {
        if (kind == k) {
            return name;
        }
    }
    return "?";
}

EventKind parse_event_kind(std::string_view s) {
    for (const auto& [kind, name] : kKindNames) {
        if (name == s) {
            return kind;
        }
    }
    throw FormatError("unknown event kind '" + std::string(s) + "'");
}

void EventLog::append(EventKind kind, std::string from, std::string to, const nlohmann::json& detail) {
    events_.push_back(Event{events_.size(), kind, std::move(from), std::move(to), detail.dump()});
}

void EventLog::extend(const EventLog& other) {
    for (Event e : other.events_) {
        e.seq = events_.size();
        events_.push_back(std::move(e));
    }
}

void EventLog::write(std::ostream& out) const {
    out << kHeader << '\n';
    out << "# config " << config_.dump() << '\n';
    for (const Event& e : events_) {
        out << e.seq << ',' << to_string(e.kind) << ',' << e.from << ',' << e.to << ',' << e.detail << '\n';
    }
    out << "# end " << events_.size() << '\n';
}

EventLog EventLog::read(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kHeader) {
        throw ReplayError("not a qsdc event log of this version");
    }
    EventLog log;
    if (!std::getline(in, line) || !line.starts_with("# config ")) {
        throw ReplayError("event log has no config line");
    }
    try {
        log.config_ = nlohmann::json::parse(line.substr(9));
    } catch (const nlohmann::json::exception& e) {
        throw ReplayError(std::string("event log config is not valid JSON: ") + e.what());
    }
    bool ended = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line.starts_with("# end ")) {
            std::size_t count = 0;
            try {
                count = std::stoull(line.substr(6));
            } catch (const std::exception&) {
                throw ReplayError("malformed trailer '" + line + "'");
            }
            if (count != log.events_.size()) {
                throw ReplayError("trailer announces " + std::to_string(count) + " events, found " +
                                  std::to_string(log.events_.size()));
            }
            ended = true;
            break;
        }
        if (in.eof()) {
            throw ReplayError("event log is truncated (last record cut short)");
        }
        std::array<std::size_t, 4> comma{};
        std::size_t at = 0;
        for (auto& c : comma) {
            c = line.find(',', at);
            if (c == std::string::npos) {
                throw FormatError("malformed event record '" + line + "'");
            }
            at = c + 1;
        }
        Event e;
        try {
            e.seq = std::stoull(line.substr(0, comma[0]));
        } catch (const std::exception&) {
            throw FormatError("malformed sequence number in '" + line + "'");
        }
        e.kind = parse_event_kind(std::string_view(line).substr(comma[0] + 1, comma[1] - comma[0] - 1));
        e.from = line.substr(comma[1] + 1, comma[2] - comma[1] - 1);
        e.to = line.substr(comma[2] + 1, comma[3] - comma[2] - 1);
        e.detail = line.substr(comma[3] + 1);
        log.events_.push_back(std::move(e));
    }
    if (!ended) {
        throw ReplayError("event log is truncated (no end trailer)");
    }
    return log;
}

std::optional<std::size_t> first_divergence(const EventLog& a, const EventLog& b) {
    const auto& ea = a.events();
    const auto& eb = b.events();
    const std::size_t common = std::min(ea.size(), eb.size());
    for (std::size_t i = 0; i < common; i++) {
        if (!(ea[i] == eb[i])) {
            return i;
        }
    }
    if (ea.size() != eb.size()) {
        return common;
    }
    return std::nullopt;
}

}  // namespace qsdc::netsim
