// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#ifndef HIJACKGUARD_ENGINE_HPP
#define HIJACKGUARD_ENGINE_HPP

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hijackguard/device.hpp"
#include "hijackguard/dispatch.hpp"
#include "hijackguard/spac.hpp"
#include "hijackguard/trace.hpp"

namespace hijackguard {

// One simulator instance: device state, enforcement configuration, custom
// rules, sink catalog, SP-AC state, and the dispatch trace. Dispatch is
// strictly sequential; a request (including any blocking on the decision
// provider and any relayed sub-requests) completes before the next begins.
class Engine {
public:
    explicit Engine(SystemRegistry sys = {}, EnforcementConfig cfg = {},
                    SinkCatalog sinks = {});

    DeviceState& device() { return device_; }
    const DeviceState& device() const { return device_; }

    EnforcementConfig& config() { return cfg_; }
    const EnforcementConfig& config() const { return cfg_; }

    SpacState& spac() { return spac_; }
    const SinkCatalog& sinks() const { return sinks_; }
    void set_sinks(SinkCatalog sinks) { sinks_ = std::move(sinks); }

    void set_decision_provider(std::shared_ptr<DecisionProvider> provider)
    {
        provider_ = std::move(provider);
    }

    const CustomRuleSet& policies() const { return rules_; }
    void set_policies(CustomRuleSet rules) { rules_ = std::move(rules); }

    // Atomic swap between dispatches: on a parse error the old set stays
    // active and the error propagates.
    void reload_policies(const std::string& dsl_text);

    // Dispatches one request. Action-based broadcasts fan out to every
    // installed receiver registering the action (install order); relayed
    // requests follow their parent. Results are in dispatch order, so the
    // last element is the final hop of the last chain.
    std::vector<DispatchResult> execute(const IpcRequest& req);

    const std::vector<TraceRecord>& trace() const { return trace_; }
    void clear_trace() { trace_.clear(); }

    ComponentRuntime& runtime(const std::string& package, const std::string& component);

    // Legacy-SDK label for the started-service entry (onStart alias).
    void set_service_start_label(std::string label) { service_start_label_ = std::move(label); }

private:
    static constexpr int kMaxRelayDepth = 16;

    DispatchResult dispatch_one(const IpcRequest& req, int depth,
                                std::vector<DispatchResult>& out);
    void run_handlers(const IpcRequest& req, const AppManifest& callee,
                      const ComponentDecl& comp, const CallContext& ctx,
                      DispatchResult& result);
    void append_trace(const DispatchResult& result);

    SystemRegistry sys_;
    DeviceState device_;
    EnforcementConfig cfg_;
    CustomRuleSet rules_;
    SinkCatalog sinks_;
    SpacState spac_;
    std::shared_ptr<DecisionProvider> provider_;
    std::map<std::pair<std::string, std::string>, ComponentRuntime> runtimes_;
    std::vector<TraceRecord> trace_;
    std::vector<IpcRequest> relay_queue_;
    std::string service_start_label_ = "onStartCommand";
    int next_step_ = 0;
};

} // namespace hijackguard

#endif
