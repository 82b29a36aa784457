// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#ifndef HIJACKGUARD_SPAC_HPP
#define HIJACKGUARD_SPAC_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "hijackguard/epac.hpp"

namespace hijackguard {

struct SinkEvent {
    std::string sink_api;
    std::vector<std::string> sink_params;
    std::string callee_component;   // qualified "package/name"
    std::string caller;
    std::int64_t clock_now = 0;
};

struct SinkCatalogEntry {
    std::string category;
    std::optional<std::string> permission;
};

struct SinkCatalog {
    std::map<std::string, SinkCatalogEntry> entries;

    bool contains(const std::string& api) const { return entries.count(api) != 0; }
};

// Line-oriented: `sink <api-name> category <string> [permission <name>]`.
// Must be non-empty; duplicate keys rejected.
SinkCatalog parse_sink_catalog(const std::string& text);
SinkCatalog load_sink_catalog_file(const std::string& path);

enum class ProviderVerdict { Allow, Deny, RememberAllow, RememberDeny };

std::string_view provider_verdict_name(ProviderVerdict v);
std::optional<ProviderVerdict> provider_verdict_from_name(std::string_view name);

// Everything shown to the user when asking for a decision. sink_or_entry is
// the sink API name, or "EEC-entry" for entry-point alerts.
struct AlertPayload {
    std::string caller;
    std::string callee_package;
    std::string component;
    std::string entry_function;
    std::string sink_or_entry;
    std::vector<std::string> params;
};

// The abstract user-decision source. decide() may block; the engine enforces
// the timeout externally and abandons the call, so implementations must be
// safe to leave running past it. Returning nullopt means "no decision".
class DecisionProvider {
public:
    virtual ~DecisionProvider() = default;
    virtual std::optional<ProviderVerdict> decide(const AlertPayload& payload) = 0;
};

// Runs provider->decide() on a detached thread and waits at most timeout_ms
// (real time). nullopt on timeout, silence, or a null provider.
std::optional<ProviderVerdict> ask_with_timeout(std::shared_ptr<DecisionProvider> provider,
                                                const AlertPayload& payload,
                                                std::int64_t timeout_ms);

// Scripted decisions consumed in alert order; empty queue = silence.
class ScriptedDecisionProvider : public DecisionProvider {
public:
    void push(ProviderVerdict v) { queue_.push_back(v); }
    std::size_t pending() const { return queue_.size(); }
    int invocation_count() const { return invocations_; }

    std::optional<ProviderVerdict> decide(const AlertPayload&) override;

private:
    std::vector<ProviderVerdict> queue_;
    int invocations_ = 0;
};

struct RateLimit {
    int max_alerts = 5;
    std::int64_t slot_ms = 60'000;
};

// Sink-point decision state: remembered verdicts, the per-caller alert-rate
// window, and the decision timeout. One SpacState serves both SP-AC sink
// interceptions and EP-AC Alert resolutions (same dialog mechanics).
class SpacState {
public:
    std::int64_t timeout_ms = 30'000;
    RateLimit rate_limit;
    // Optional sink-point blacklist filter, off unless keywords are set.
    std::vector<std::string> sink_param_blacklist;

    // The shared decision pipeline: internal requests pass without a prompt;
    // a cache hit answers without the provider; rate-limit overflow denies;
    // otherwise the provider is asked, and silence past timeout_ms denies.
    // The optional sink blacklist runs pre-provider for sink events only.
    Decision decide(const AlertPayload& payload, const std::string& cache_key,
                    bool external, std::int64_t now,
                    std::shared_ptr<DecisionProvider> provider,
                    bool apply_sink_filter = false);

    std::size_t cache_size() const { return cache_.size(); }
    void clear_cache() { cache_.clear(); }

private:
    // (caller, component, sink-or-entry key) -> remembered verdict
    std::map<std::tuple<std::string, std::string, std::string>, Verdict> cache_;
    std::map<std::string, std::vector<std::int64_t>> alert_times_;

    friend Decision intercept_sink(SpacState&, const SinkCatalog&, const SinkEvent&,
                                   const CallContext&, std::shared_ptr<DecisionProvider>);
};

// SP-AC interception just before a sink API executes. The event's sink_api
// must be in the catalog.
Decision intercept_sink(SpacState& spac, const SinkCatalog& catalog, const SinkEvent& ev,
                        const CallContext& ctx, std::shared_ptr<DecisionProvider> provider);

// Resolution of an EP-AC Alert verdict (the EEC path), keyed by entry rather
// than sink. Allow resumes dispatch; Deny terminates it.
Decision resolve_alert(SpacState& spac, const CallContext& ctx,
                       std::shared_ptr<DecisionProvider> provider);

} // namespace hijackguard

#endif
