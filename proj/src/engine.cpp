// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "hijackguard/engine.hpp"

#include <algorithm>

#include "hijackguard/errors.hpp"
#include "hijackguard/policy_dsl.hpp"

namespace hijackguard {
namespace {

// Missing or null required extras crash the handler, the common missed-null-
// check mistake P5 exists for.
bool handler_crashes(const ComponentDecl& comp, const IpcRequest& req)
{
    for (const std::string& key : comp.required_extras) {
        auto it = req.extras.find(key);
        if (it == req.extras.end() || !it->second.has_value()) return true;
    }
    return false;
}

const std::vector<std::string>* resolve_table(const ComponentDecl& comp, const IpcRequest& req,
                                              std::string& table_name)
{
    if (comp.tables.empty()) return nullptr;
    if (comp.tables.size() == 1) {
        table_name = comp.tables.begin()->first;
        return &comp.tables.begin()->second;
    }
    if (req.input_uri) {
        auto slash = req.input_uri->rfind('/');
        std::string segment =
            slash == std::string::npos ? *req.input_uri : req.input_uri->substr(slash + 1);
        if (auto it = comp.tables.find(segment); it != comp.tables.end()) {
            table_name = it->first;
            return &it->second;
        }
    }
    return nullptr;
}

} // namespace

Engine::Engine(SystemRegistry sys, EnforcementConfig cfg, SinkCatalog sinks)
    : sys_(std::move(sys)), device_(sys_), cfg_(std::move(cfg)), sinks_(std::move(sinks))
{
}

void Engine::reload_policies(const std::string& dsl_text)
{
    CustomRuleSet parsed = parse_policy_dsl(dsl_text);   // throws; old set stays
    rules_ = std::move(parsed);
}

ComponentRuntime& Engine::runtime(const std::string& package, const std::string& component)
{
    return runtimes_[{package, component}];
}

std::vector<DispatchResult> Engine::execute(const IpcRequest& req)
{
    if (req.caller != kSystemSender && !device_.is_installed(req.caller)) {
        throw Error(Errc::UnknownPackage, "caller not installed: " + req.caller);
    }

    std::vector<DispatchResult> out;
    if (!req.has_explicit_target()) {
        if (!is_broadcast_api(req.api)) {
            throw Error(Errc::UnknownTarget, "only broadcasts may omit an explicit target");
        }
        if (!req.input_action) {
            throw Error(Errc::UnknownTarget, "action-based broadcast without an action");
        }
        // Deliver to every installed receiver registering the action, in
        // install order. Explicit targeting (below) bypasses this matching.
        for (const AppManifest& app : device_.apps()) {
            for (const ComponentDecl& comp : app.components) {
                if (comp.kind == ComponentKind::Receiver && comp.has_action(*req.input_action)) {
                    IpcRequest delivery = req;
                    delivery.target_package = app.package_name;
                    delivery.target_component = comp.name;
                    dispatch_one(delivery, 0, out);
                }
            }
        }
        return out;
    }

    dispatch_one(req, 0, out);
    return out;
}

DispatchResult Engine::dispatch_one(const IpcRequest& req, int depth,
                                    std::vector<DispatchResult>& out)
{
    const AppManifest* callee = device_.find_app(req.target_package);
    if (!callee) {
        throw Error(Errc::UnknownTarget, "no such package: " + req.target_package);
    }
    const ComponentDecl* comp = callee->find_component(req.target_component);
    if (!comp) {
        throw Error(Errc::UnknownTarget, "no component " + req.target_id());
    }

    DispatchResult result;
    result.request = req;
    result.depth = depth;

    ExportStatus export_status = effective_export(*comp, callee->target_sdk);
    result.gate = system_gate(device_, sys_, req, *comp, export_status);
    if (!result.gate.allow) {
        append_trace(result);
        out.push_back(result);
        return result;
    }

    ComponentRuntime& runtime = runtimes_[{req.target_package, req.target_component}];
    std::vector<std::string> entries = resolve_entries(req, runtime, *comp, service_start_label_);
    // The primary entry: the one the caller API exists to reach.
    const std::string& entry_function = entries.back();

    CallContext ctx = extract_context(device_, sys_, cfg_, req, *callee, *comp, export_status,
                                      entry_function);
    result.epac = evaluate_epac(ctx, sys_, cfg_, rules_);

    if (result.epac->verdict == Verdict::Deny) {
        append_trace(result);
        out.push_back(result);
        return result;
    }
    if (result.epac->verdict == Verdict::Alert) {
        Decision resolution = resolve_alert(spac_, ctx, provider_);
        result.spac.push_back(resolution);
        if (resolution.verdict != Verdict::Allow) {
            append_trace(result);
            out.push_back(result);
            return result;
        }
    }

    // Entry invocation. Lifecycle state changes only now, after every gate.
    result.entries_invoked = entries;
    if (is_activity_api(req.api)) {
        runtime.created = true;
        runtime.active_instance = true;
    } else if (req.api == CallerApi::StartService) {
        runtime.created = true;
    } else if (req.api == CallerApi::BindService) {
        runtime.created = true;
        runtime.bound = true;
        runtime.ever_bound = true;
    }

    run_handlers(req, *callee, *comp, ctx, result);

    append_trace(result);
    out.push_back(result);

    // Relays dispatch only after this request has fully completed.
    std::vector<IpcRequest> relayed;
    for (const Effect& effect : result.effects) {
        if (const auto* r = std::get_if<EffectRelayed>(&effect)) relayed.push_back(r->request);
    }
    for (const IpcRequest& next : relayed) {
        if (depth + 1 <= kMaxRelayDepth) {
            dispatch_one(next, depth + 1, out);
        }
    }
    return result;
}

void Engine::run_handlers(const IpcRequest& req, const AppManifest& callee,
                          const ComponentDecl& comp, const CallContext& ctx,
                          DispatchResult& result)
{
    std::string qualified = callee.package_name + "/" + comp.name;

    if (handler_crashes(comp, req)) {
        device_.record_crash(req.caller, qualified, device_.clock());
        result.effects.push_back(EffectCrashed{qualified});
        // The crash tears the component instance down.
        runtimes_[{req.target_package, req.target_component}] = ComponentRuntime{};
        return;
    }

    if (req.api == CallerApi::Query) {
        std::string table_name;
        if (const std::vector<std::string>* rows = resolve_table(comp, req, table_name)) {
            result.effects.push_back(EffectDataReturned{table_name, *rows});
        }
    }

    for (const RelayDecl& decl : comp.relays) {
        result.effects.push_back(EffectRelayed{relay(req, callee.package_name, decl)});
    }

    for (const SinkDecl& decl : comp.sink_calls) {
        SinkEvent event;
        event.sink_api = decl.api;
        event.sink_params = decl.params.empty() ? req.call_params : decl.params;
        event.callee_component = qualified;
        event.caller = req.caller;
        event.clock_now = device_.clock();
        Decision decision = intercept_sink(spac_, sinks_, event, ctx, provider_);
        result.spac.push_back(decision);
        result.effects.push_back(EffectSinkReached{std::move(event), std::move(decision)});
    }
}

void Engine::append_trace(const DispatchResult& result)
{
    TraceRecord record;
    record.step = next_step_++;
    record.clock = device_.clock();
    record.result = result;
    trace_.push_back(std::move(record));
}

} // namespace hijackguard
