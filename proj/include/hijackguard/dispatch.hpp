// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#ifndef HIJACKGUARD_DISPATCH_HPP
#define HIJACKGUARD_DISPATCH_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hijackguard/device.hpp"
#include "hijackguard/epac.hpp"
#include "hijackguard/manifest.hpp"
#include "hijackguard/request.hpp"
#include "hijackguard/spac.hpp"

namespace hijackguard {

// Lifecycle state of one component instance. onCreate fires at most once per
// created-lifetime; a crash ends the lifetime.
struct ComponentRuntime {
    bool created = false;
    bool active_instance = false;   // Activity, for SINGLE_TOP
    bool bound = false;             // Service bind state
    bool ever_bound = false;
};

enum class GateReason { Allowed, NotExported, PermissionDenied, SystemOnlyAction };

std::string_view gate_reason_name(GateReason reason);

// Outcome of Android's own baseline enforcement, which the in-app defense
// assumes as given: export status, permission attributes, and the
// system-only broadcast restriction.
struct GateResult {
    bool allow = false;
    GateReason reason = GateReason::Allowed;
};

// Entry function(s) the request activates, in invocation order.
std::vector<std::string> resolve_entries(const IpcRequest& req, const ComponentRuntime& runtime,
                                         const ComponentDecl& comp,
                                         const std::string& service_start_label = "onStartCommand");

GateResult system_gate(const DeviceState& state, const SystemRegistry& sys,
                       const IpcRequest& req, const ComponentDecl& comp,
                       ExportStatus export_status);

// Builds the relayed request: caller becomes the relaying app and, when the
//original was externally originated, the origin flag is stamped so policy
// evaluation still sees the chain as external.
IpcRequest relay(const IpcRequest& original, const std::string& relaying_package,
                 const RelayDecl& decl);

struct EffectCrashed {
    std::string component;   // qualified
};

struct EffectDataReturned {
    std::string table;
    std::vector<std::string> rows;
};

struct EffectSinkReached {
    SinkEvent event;
    Decision decision;
};

struct EffectRelayed {
    IpcRequest request;
};

using Effect = std::variant<EffectCrashed, EffectDataReturned, EffectSinkReached, EffectRelayed>;

struct DispatchResult {
    IpcRequest request;
    int depth = 0;                       // relay hops from the root request
    GateResult gate;
    std::optional<Decision> epac;        // absent when the gate denied
    std::vector<Decision> spac;          // alert/sink resolutions, in order
    std::vector<std::string> entries_invoked;
    std::vector<Effect> effects;

    bool denied() const
    {
        if (!gate.allow) return true;
        return epac && epac->verdict == Verdict::Deny;
    }
};

} // namespace hijackguard

#endif
