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

#ifndef QSDC_TOOLS_CLI_REPLAY_H
#define QSDC_TOOLS_CLI_REPLAY_H

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "qsdc/netsim/event_log.h"

namespace qsdc::cli {

/// Re-executes the run described by a log's config block. ReplayError if
/// the config names no protocol this build can run.
netsim::EventLog rerun(const nlohmann::json& config);

struct ReplayVerdict {
    bool ok = false;
    std::size_t events = 0;
    std::optional<std::size_t> first_divergence;
    std::string recorded;  // the records at the divergence, as text
    std::string replayed;
};

ReplayVerdict replay(const netsim::EventLog& recorded);

nlohmann::json to_json(const ReplayVerdict& v);

}  // namespace qsdc::cli

#endif  // QSDC_TOOLS_CLI_REPLAY_H
