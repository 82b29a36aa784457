// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "hijackguard/epac.hpp"

#include <algorithm>
#include <cctype>

namespace hijackguard {
namespace {

bool icontains(std::string_view haystack, std::string_view needle)
{
    if (needle.empty()) return false;
    auto lower = [](char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); };
    auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(),
                          [&](char a, char b) { return lower(a) == lower(b); });
    return it != haystack.end();
}

bool non_provider(ComponentKind kind)
{
    return kind == ComponentKind::Activity || kind == ComponentKind::Service
        || kind == ComponentKind::Receiver;
}

std::string field_value(const CallContext& ctx, const std::string& field)
{
    if (field == "caller.package") return ctx.id_a;
    if (field == "caller.signature") return ctx.caller_signature;
    if (field == "callee.package") return ctx.id_v;
    if (field == "callee.component") return ctx.callee_component;
    if (field == "callee.kind") return std::string(component_kind_name(ctx.component_kind));
    if (field == "callee.export") return std::string(export_status_name(ctx.export_status));
    if (field == "entry.function") return ctx.entry_function;
    if (field == "input.action") return ctx.input_action.value_or("");
    if (field == "input.uri") return ctx.input_uri.value_or("");
    return "";
}

bool condition_matches(const RuleCondition& cond, const CallContext& ctx)
{
    if (cond.field == "input.param") {
        // Multi-valued: == / contains match any parameter; != means no
        // parameter equals the literal.
        switch (cond.op) {
            case RuleOp::Eq:
                return std::find(ctx.input_params.begin(), ctx.input_params.end(), cond.literal)
                    != ctx.input_params.end();
            case RuleOp::Ne:
                return std::find(ctx.input_params.begin(), ctx.input_params.end(), cond.literal)
                    == ctx.input_params.end();
            case RuleOp::Contains:
                return std::any_of(ctx.input_params.begin(), ctx.input_params.end(),
                                   [&](const std::string& p) { return icontains(p, cond.literal); });
        }
        return false;
    }
    std::string value = field_value(ctx, cond.field);
    switch (cond.op) {
        case RuleOp::Eq: return value == cond.literal;
        case RuleOp::Ne: return value != cond.literal;
        case RuleOp::Contains: return icontains(value, cond.literal);
    }
    return false;
}

} // namespace

std::string_view verdict_name(Verdict v)
{
    switch (v) {
        case Verdict::Allow: return "allow";
        case Verdict::Deny: return "deny";
        case Verdict::Alert: return "alert";
    }
    return "?";
}

CallContext extract_context(const DeviceState& state, const SystemRegistry& sys,
                            const EnforcementConfig& cfg, const IpcRequest& req,
                            const AppManifest& callee, const ComponentDecl& comp,
                            ExportStatus export_status, const std::string& entry_function)
{
    CallContext ctx;
    ctx.id_a = req.caller;
    ctx.id_v = callee.package_name;
    ctx.callee_component = comp.name;
    ctx.external = ctx.id_a != ctx.id_v || req.origin_flag() == std::string(kOriginFlagOutside);
    ctx.export_status = export_status;
    ctx.perm_attr_v = comp.permission_attr;
    ctx.action_attrs = comp.intent_actions;
    ctx.input_action = req.input_action;
    ctx.input_uri = req.input_uri;
    ctx.input_params = req.call_params;
    ctx.entry_function = entry_function;
    ctx.component_kind = comp.kind;
    ctx.clock_now = state.clock();
    ctx.crash_num = state.crash_count(req.caller, ctx.id_v + "/" + comp.name,
                                      cfg.crash_window_ms, state.clock());

    if (const AppManifest* caller = state.find_app(req.caller)) {
        ctx.caller_signature = caller->signature_key;
        ctx.same_signature = caller->signature_key == callee.signature_key;
        if (ctx.perm_attr_v) {
            ctx.perm_attr_a_claimed = caller->uses_permission(*ctx.perm_attr_v);
        }
    }
    (void)sys;
    return ctx;
}

std::optional<Decision> eval_p1(const CallContext& ctx, const SystemRegistry& sys)
{
    if (ctx.external && ctx.perm_attr_v && !sys.is_sys_perm(*ctx.perm_attr_v)
        && ctx.perm_attr_a_claimed) {
        return Decision{Verdict::Deny, "P1",
                        "caller claims custom permission " + *ctx.perm_attr_v};
    }
    return std::nullopt;
}

std::optional<Decision> eval_p2(const CallContext& ctx)
{
    if (ctx.component_kind == ComponentKind::Provider && ctx.external
        && ctx.export_status == ExportStatus::ImplicitExported) {
        return Decision{Verdict::Deny, "P2", "provider exported only by default"};
    }
    return std::nullopt;
}

std::optional<Decision> eval_p3(const CallContext& ctx, const SystemRegistry& sys)
{
    if (!non_provider(ctx.component_kind) || !ctx.external
        || ctx.export_status != ExportStatus::ImplicitExported) {
        return std::nullopt;
    }
    // The matched action is tested when present; otherwise every registered
    // action must be custom for the request to be denied.
    bool custom_only;
    if (ctx.input_action) {
        custom_only = !sys.is_sys_action(*ctx.input_action);
    } else {
        custom_only = std::none_of(ctx.action_attrs.begin(), ctx.action_attrs.end(),
                                   [&](const std::string& a) { return sys.is_sys_action(a); });
    }
    if (custom_only) {
        return Decision{Verdict::Deny, "P3", "by-default export reachable via custom action"};
    }
    return std::nullopt;
}

std::optional<Decision> eval_p4(const CallContext& ctx, const SystemRegistry& sys)
{
    if (ctx.component_kind != ComponentKind::Receiver || !ctx.external) {
        return std::nullopt;
    }
    bool has_sys_action = false;
    bool input_matches = false;
    for (const std::string& action : ctx.action_attrs) {
        if (!sys.is_sys_action(action)) continue;
        has_sys_action = true;
        if (ctx.input_action && *ctx.input_action == action) input_matches = true;
    }
    // A missing input action counts as a mismatch: the attack is exactly
    // triggering the entry without the real system action.
    if (has_sys_action && !input_matches) {
        return Decision{Verdict::Deny, "P4",
                        ctx.input_action ? "input action does not match registered system action"
                                         : "input action missing for system-action receiver"};
    }
    return std::nullopt;
}

std::optional<Decision> eval_p5(const CallContext& ctx, const EnforcementConfig& cfg)
{
    if (ctx.external && ctx.crash_num >= cfg.crash_threshold) {
        return Decision{Verdict::Deny, "P5",
                        "caller crashed this component " + std::to_string(ctx.crash_num)
                            + " time(s) in the window"};
    }
    return std::nullopt;
}

std::optional<Decision> eval_p6(const CallContext& ctx, const EnforcementConfig& cfg)
{
    if (ctx.component_kind != ComponentKind::Provider || !ctx.external) {
        return std::nullopt;
    }
    for (const std::string& param : ctx.input_params) {
        for (const std::string& keyword : cfg.sql_blacklist) {
            if (icontains(param, keyword)) {
                return Decision{Verdict::Deny, "P6",
                                "parameter matches blacklisted keyword \"" + keyword + "\""};
            }
        }
    }
    return std::nullopt;
}

bool rule_matches(const CustomRule& rule, const CallContext& ctx)
{
    return std::all_of(rule.conditions.begin(), rule.conditions.end(),
                       [&](const RuleCondition& cond) { return condition_matches(cond, ctx); });
}

Decision evaluate_epac(const CallContext& ctx, const SystemRegistry& sys,
                       const EnforcementConfig& cfg, const CustomRuleSet& custom)
{
    // Custom Allow rules first: the whitelist use case must be able to
    // override a builtin deny.
    for (const CustomRule& rule : custom.rules) {
        if (rule.action == Verdict::Allow && rule_matches(rule, ctx)) {
            return Decision{Verdict::Allow, rule.id, "custom allow rule"};
        }
    }

    using Eval = std::optional<Decision> (*)(const CallContext&, const SystemRegistry&,
                                             const EnforcementConfig&);
    static constexpr std::pair<const char*, Eval> builtins[] = {
        {"P1", [](const CallContext& c, const SystemRegistry& s, const EnforcementConfig&) {
             return eval_p1(c, s);
         }},
        {"P2", [](const CallContext& c, const SystemRegistry&, const EnforcementConfig&) {
             return eval_p2(c);
         }},
        {"P3", [](const CallContext& c, const SystemRegistry& s, const EnforcementConfig&) {
             return eval_p3(c, s);
         }},
        {"P4", [](const CallContext& c, const SystemRegistry& s, const EnforcementConfig&) {
             return eval_p4(c, s);
         }},
        {"P5", [](const CallContext& c, const SystemRegistry&, const EnforcementConfig& f) {
             return eval_p5(c, f);
         }},
        {"P6", [](const CallContext& c, const SystemRegistry&, const EnforcementConfig& f) {
             return eval_p6(c, f);
         }},
    };
    // First deny wins; later policies are not consulted.
    for (const auto& [id, eval] : builtins) {
        if (!cfg.builtin_enabled.count(id)) continue;
        if (std::optional<Decision> decision = eval(ctx, sys, cfg)) {
            return *decision;
        }
    }

    for (const CustomRule& rule : custom.rules) {
        if (rule.action != Verdict::Allow && rule_matches(rule, ctx)) {
            return Decision{rule.action, rule.id, "custom rule"};
        }
    }

    // The EEC rule extends P2: external access to an explicitly exported
    // provider defers to the user-decision flow.
    if (cfg.eec_alert_enabled && ctx.external && ctx.component_kind == ComponentKind::Provider
        && ctx.export_status == ExportStatus::ExplicitExported) {
        return Decision{Verdict::Alert, "EEC", "explicitly exported provider accessed externally"};
    }

    return Decision{Verdict::Allow, "default", ctx.external ? "no policy matched" : "internal request"};
}

} // namespace hijackguard
