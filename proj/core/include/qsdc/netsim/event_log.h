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

#ifndef QSDC_NETSIM_EVENT_LOG_H
#define QSDC_NETSIM_EVENT_LOG_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace qsdc::netsim {

enum class EventKind { kSend, kDeliver, kIntercept, kMeasure, kOperation, kDecision, kAbort, kHalt };

std::string_view to_string(EventKind k);
/// FormatError for unknown names.
EventKind parse_event_kind(std::string_view s);

struct Event {
    std::uint64_t seq = 0;
    EventKind kind = EventKind::kSend;
    std::string from;
    std::string to;
    std::string detail;  // compact JSON

    bool operator==(const Event&) const = default;
};

/// Ordered record of a run. The text form is
///
///   # qsdc-eventlog v1
///   # config {...}
///   seq,kind,from,to,detail
///   ...
///   # end <count>
///
/// with detail as compact JSON running to the end of the line.
class EventLog {
   public:
    static constexpr std::string_view kHeader = "# qsdc-eventlog v1";

    void set_config(nlohmann::json config) { config_ = std::move(config); }
    const nlohmann::json& config() const { return config_; }

    void append(EventKind kind, std::string from, std::string to, const nlohmann::json& detail);
    const std::vector<Event>& events() const { return events_; }
    std::size_t size() const { return events_.size(); }
    bool empty() const { return events_.empty(); }

    /// Appends another log's events, renumbering them after ours.
    void extend(const EventLog& other);

    void write(std::ostream& out) const;
    /// ReplayError on a wrong header, a missing trailer or a count mismatch;
    /// FormatError on a malformed record.
    static EventLog read(std::istream& in);

    bool operator==(const EventLog& other) const { return events_ == other.events_; }

   private:
    nlohmann::json config_ = nlohmann::json::object();
    std::vector<Event> events_;
};

/// Index of the first event where the logs differ (or where one ends early).
std::optional<std::size_t> first_divergence(const EventLog& a, const EventLog& b);

}  // namespace qsdc::netsim

#endif  // QSDC_NETSIM_EVENT_LOG_H
