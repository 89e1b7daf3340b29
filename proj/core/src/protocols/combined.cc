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

#include "qsdc/protocols/combined.h"

#include <nlohmann/json.hpp>

#include "qsdc/protocols/fair.h"
#include "qsdc/qcore/errors.h"
#include "stream_engine.h"

namespace qsdc::protocols {

CombinedResult run_sdc_combined(const CombinedConfig& cfg) {
    if (!(cfg.alpha > 0.5 && cfg.alpha < 1.0)) {
        throw ConfigError("alpha must lie in (1/2, 1)");
    }
    detail::StreamConfig sc;
    sc.protocol = "combined";
    sc.family = cfg.family;
    sc.locking = cfg.locking;
    sc.n = cfg.n;
    sc.s = cfg.s;
    sc.r = cfg.r;
    sc.b = cfg.b;
    sc.c = cfg.c;
    sc.stepwise = true;
    sc.detect_phase = true;
    sc.charlie = cfg.charlie;
    sc.bob = cfg.bob;
    sc.seed = cfg.seed;
    detail::StreamOutcome o = detail::run_stream_protocol(sc);

    CombinedResult r;
    r.completed = o.completed;
    r.aborted_by = o.aborted_by;
    r.alice_detected = o.alice_detected;
    r.attacker_learned = o.attacker_learned;
    r.detected_at_step = o.detected_at_step;
    r.detected_at_check = o.detected_at_check;
    r.detected_by = o.detected_by;
    r.bob_decoded = o.bob_decoded;
    r.charlie_decoded = o.charlie_decoded;
    r.bob_correct_bits = o.bob_correct_bits;
    r.charlie_correct_bits = o.charlie_correct_bits;
    r.bob_accepts = !o.alice_detected && meets_alpha(o.bob_correct_bits, 2 * cfg.n, cfg.alpha);
    r.charlie_accepts = !o.alice_detected && meets_alpha(o.charlie_correct_bits, 2 * cfg.n, cfg.alpha);
    r.controls_bob = std::move(o.controls_bob);
    r.controls_charlie = std::move(o.controls_charlie);
    r.detect_bob = std::move(o.detect_bob);
    r.detect_charlie = std::move(o.detect_charlie);
    r.log = std::move(o.log);
    return r;
}

bool detection_precedes_unlocking(const EventLog& log) {
    bool checked = false;
    for (const netsim::Event& e : log.events()) {
        if (e.kind == netsim::EventKind::kDecision && e.from == "ALICE") {
            if (nlohmann::json::parse(e.detail).contains("detect_check")) {
                checked = true;
            }
            continue;
        }
        if (e.kind == netsim::EventKind::kOperation && (e.from == "BOB" || e.from == "CHARLIE")) {
            const std::string op = nlohmann::json::parse(e.detail).value("op", "");
            if ((op == "unlock" || op == "unlock_pair") && !checked) {
                return false;
            }
        }
    }
    return checked;
}

}  // namespace qsdc::protocols
