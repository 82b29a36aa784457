// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "hijackguard/trace.hpp"

#include <json.hpp>

namespace hijackguard {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json decision_json(const Decision& decision)
{
    return ordered_json{{"verdict", std::string(verdict_name(decision.verdict))},
                        {"policy", decision.policy_id},
                        {"reason", decision.reason}};
}

ordered_json effect_json(const Effect& effect)
{
    ordered_json j;
    if (const auto* crashed = std::get_if<EffectCrashed>(&effect)) {
        j["type"] = "crash";
        j["component"] = crashed->component;
    } else if (const auto* data = std::get_if<EffectDataReturned>(&effect)) {
        j["type"] = "data";
        j["table"] = data->table;
        j["rows"] = data->rows;
    } else if (const auto* sink = std::get_if<EffectSinkReached>(&effect)) {
        j["type"] = "sink";
        j["api"] = sink->event.sink_api;
        j["params"] = sink->event.sink_params;
        j["decision"] = decision_json(sink->decision);
    } else if (const auto* relayed = std::get_if<EffectRelayed>(&effect)) {
        j["type"] = "relayed";
        j["target"] = relayed->request.target_id();
        j["api"] = std::string(caller_api_name(relayed->request.api));
        j["flagged"] = relayed->request.origin_flag().has_value();
    }
    return j;
}

} // namespace

std::string TraceRecord::to_json_line() const
{
    const DispatchResult& r = result;
    ordered_json j;
    j["step"] = step;
    j["clock"] = clock;
    j["depth"] = r.depth;
    j["caller"] = r.request.caller;
    j["api"] = std::string(caller_api_name(r.request.api));
    j["target"] = r.request.target_id();
    if (r.request.input_action) j["action"] = *r.request.input_action;
    j["gate"] = ordered_json{{"allow", r.gate.allow},
                             {"reason", std::string(gate_reason_name(r.gate.reason))}};
    if (r.epac) j["epac"] = decision_json(*r.epac);
    if (!r.spac.empty()) {
        ordered_json spac = ordered_json::array();
        for (const Decision& d : r.spac) spac.push_back(decision_json(d));
        j["spac"] = std::move(spac);
    }
    j["entries"] = r.entries_invoked;
    ordered_json effects = ordered_json::array();
    for (const Effect& effect : r.effects) effects.push_back(effect_json(effect));
    j["effects"] = std::move(effects);
    return j.dump();
}

} // namespace hijackguard
