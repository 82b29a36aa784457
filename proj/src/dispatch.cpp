// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "hijackguard/dispatch.hpp"

#include <algorithm>

#include "hijackguard/errors.hpp"

namespace hijackguard {
namespace {

ComponentKind expected_kind(CallerApi api)
{
    if (is_activity_api(api)) return ComponentKind::Activity;
    if (is_service_api(api)) return ComponentKind::Service;
    if (is_broadcast_api(api)) return ComponentKind::Receiver;
    return ComponentKind::Provider;
}

std::string provider_entry(CallerApi api)
{
    switch (api) {
        case CallerApi::Query: return "query";
        case CallerApi::Insert: return "insert";
        case CallerApi::BulkInsert: return "bulkInsert";
        case CallerApi::Update: return "update";
        case CallerApi::Delete: return "delete";
        case CallerApi::OpenFileDescriptor: return "openFile";
        default: return "";
    }
}

} // namespace

std::string_view gate_reason_name(GateReason reason)
{
    switch (reason) {
        case GateReason::Allowed: return "Allowed";
        case GateReason::NotExported: return "NotExported";
        case GateReason::PermissionDenied: return "PermissionDenied";
        case GateReason::SystemOnlyAction: return "SystemOnlyAction";
    }
    return "?";
}

std::vector<std::string> resolve_entries(const IpcRequest& req, const ComponentRuntime& runtime,
                                         const ComponentDecl& comp,
                                         const std::string& service_start_label)
{
    if (expected_kind(req.api) != comp.kind) {
        throw Error(Errc::KindMismatch,
                    std::string(caller_api_name(req.api)) + " cannot target a "
                        + std::string(component_kind_name(comp.kind)));
    }

    switch (req.api) {
        case CallerApi::StartActivity:
        case CallerApi::StartActivityForResult:
            if (req.single_top && runtime.active_instance) {
                return {"onNewIntent"};
            }
            return {"onCreate", "onStart"};

        case CallerApi::StartService:
            if (runtime.created) return {service_start_label};
            return {"onCreate", service_start_label};

        case CallerApi::BindService:
            if (!runtime.created) return {"onCreate", "onBind"};
            if (runtime.ever_bound && !runtime.bound) return {"onRebind"};
            return {"onBind"};

        case CallerApi::BinderCall: {
            const auto& fns = comp.binder_interfaces;
            if (std::find(fns.begin(), fns.end(), req.binder_function) == fns.end()) {
                throw Error(Errc::UnknownBinderFunction,
                            "no binder interface '" + req.binder_function + "' on " + comp.name);
            }
            return {req.binder_function};
        }

        case CallerApi::SendBroadcast:
        case CallerApi::SendOrderedBroadcast:
            return {"onReceive"};

        default:
            return {provider_entry(req.api)};
    }
}

GateResult system_gate(const DeviceState& state, const SystemRegistry& sys,
                       const IpcRequest& req, const ComponentDecl& comp,
                       ExportStatus export_status)
{
    // Calls that never leave the app bypass the gate entirely.
    if (req.caller == req.target_package) {
        return {true, GateReason::Allowed};
    }

    if (!is_exported(export_status)) {
        return {false, GateReason::NotExported};
    }

    bool is_system = req.caller == kSystemSender;
    if (comp.permission_attr && !is_system) {
        bool granted = false;
        try {
            granted = state.resolve_grant(req.caller, *comp.permission_attr);
        } catch (const Error& e) {
            // A guard permission nobody defined is never satisfiable.
            if (e.code() != Errc::UnknownPermission) throw;
        }
        if (!granted) return {false, GateReason::PermissionDenied};
    }

    if (is_broadcast_api(req.api) && req.input_action && !is_system
        && sys.is_sys_only_action(*req.input_action)) {
        return {false, GateReason::SystemOnlyAction};
    }

    return {true, GateReason::Allowed};
}

IpcRequest relay(const IpcRequest& original, const std::string& relaying_package,
                 const RelayDecl& decl)
{
    IpcRequest next;
    next.caller = relaying_package;
    next.api = decl.api;
    next.target_package = decl.target_package;
    next.target_component = decl.target_component;
    next.binder_function = decl.binder_function;
    next.input_action = decl.action;
    next.input_uri = original.input_uri;
    next.extras = original.extras;
    next.call_params = original.call_params;

    // Only chains that crossed an app boundary get stamped; a chain that
    // stays inside its own app remains internal.
    bool externally_originated = original.caller != relaying_package
        || original.origin_flag() == std::string(kOriginFlagOutside);
    if (externally_originated) {
        next.extras[std::string(kOriginFlagKey)] = std::string(kOriginFlagOutside);
    }
    return next;
}

} // namespace hijackguard
