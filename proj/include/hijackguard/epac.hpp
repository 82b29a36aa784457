// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#ifndef HIJACKGUARD_EPAC_HPP
#define HIJACKGUARD_EPAC_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hijackguard/device.hpp"
#include "hijackguard/manifest.hpp"
#include "hijackguard/request.hpp"

namespace hijackguard {

enum class Verdict { Allow, Deny, Alert };

std::string_view verdict_name(Verdict v);

struct Decision {
    Verdict verdict = Verdict::Allow;
    std::string policy_id;   // "P1".."P6", "EEC", a custom rule id, or "default"
    std::string reason;
};

// The enforcement primitives extracted from one allowed-by-the-gate request.
// A request is external when it crosses packages or carries the relay origin
// flag; every builtin policy passes for internal requests.
struct CallContext {
    std::string id_a;                    // caller identity
    std::string id_v;                    // callee identity
    std::string caller_signature;
    std::string callee_component;        // component name within id_v
    bool same_signature = false;
    bool external = false;
    ExportStatus export_status = ExportStatus::NotExported;
    std::optional<std::string> perm_attr_v;
    bool perm_attr_a_claimed = false;    // caller requested perm_attr_v
    std::vector<std::string> action_attrs;
    std::optional<std::string> input_action;
    std::optional<std::string> input_uri;
    std::vector<std::string> input_params;
    std::string entry_function;
    int crash_num = 0;
    ComponentKind component_kind = ComponentKind::Activity;
    std::int64_t clock_now = 0;
};

struct EnforcementConfig {
    int crash_threshold = 3;
    std::int64_t crash_window_ms = 60'000;
    // Case-insensitive substring blacklist for P6. Only ";" and the
    // "* from" phrase are attack-sourced; the rest are conventional.
    std::vector<std::string> sql_blacklist = {";", "--", "union select", "* from"};
    std::set<std::string> builtin_enabled = {"P1", "P2", "P3", "P4", "P5", "P6"};
    bool eec_alert_enabled = true;

    static EnforcementConfig disabled()
    {
        EnforcementConfig cfg;
        cfg.builtin_enabled.clear();
        cfg.eec_alert_enabled = false;
        return cfg;
    }
};

enum class RuleOp { Eq, Ne, Contains };

struct RuleCondition {
    std::string field;   // one of the DSL field catalog
    RuleOp op = RuleOp::Eq;
    std::string literal;
};

struct CustomRule {
    std::string id;
    int priority = 0;
    Verdict action = Verdict::Allow;
    std::vector<RuleCondition> conditions;   // conjunction
};

// Priority-ordered (descending priority, then file order).
struct CustomRuleSet {
    std::vector<CustomRule> rules;

    bool empty() const { return rules.empty(); }
};

// Extracts the CallContext for a request the system gate already allowed.
// entry_function is the primary entry the dispatcher resolved for the call.
CallContext extract_context(const DeviceState& state, const SystemRegistry& sys,
                            const EnforcementConfig& cfg, const IpcRequest& req,
                            const AppManifest& callee, const ComponentDecl& comp,
                            ExportStatus export_status, const std::string& entry_function);

// Builtin MAC policies. Each returns a Deny decision or nothing (pass), and
// passes outright for internal requests.
std::optional<Decision> eval_p1(const CallContext& ctx, const SystemRegistry& sys);
std::optional<Decision> eval_p2(const CallContext& ctx);
std::optional<Decision> eval_p3(const CallContext& ctx, const SystemRegistry& sys);
std::optional<Decision> eval_p4(const CallContext& ctx, const SystemRegistry& sys);
std::optional<Decision> eval_p5(const CallContext& ctx, const EnforcementConfig& cfg);
std::optional<Decision> eval_p6(const CallContext& ctx, const EnforcementConfig& cfg);

bool rule_matches(const CustomRule& rule, const CallContext& ctx);

// Full EP-AC evaluation:
//   1. custom Allow rules (whitelist overrides, first match wins)
//   2. enabled builtins P1..P6 in numeric order, first Deny wins
//   3. custom Deny/Alert rules by priority
//   4. the EEC rule: external access to an explicitly exported provider
//      raises Alert for the user-decision flow
//   5. default Allow
Decision evaluate_epac(const CallContext& ctx, const SystemRegistry& sys,
                       const EnforcementConfig& cfg, const CustomRuleSet& custom);

} // namespace hijackguard

#endif
