// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "hijackguard/spac.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "hijackguard/errors.hpp"

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

std::vector<std::string> split_words(const std::string& line)
{
    std::vector<std::string> words;
    std::istringstream in(line);
    std::string word;
    while (in >> word) words.push_back(word);
    return words;
}

} // namespace

std::string_view provider_verdict_name(ProviderVerdict v)
{
    switch (v) {
        case ProviderVerdict::Allow: return "allow";
        case ProviderVerdict::Deny: return "deny";
        case ProviderVerdict::RememberAllow: return "remember-allow";
        case ProviderVerdict::RememberDeny: return "remember-deny";
    }
    return "?";
}

std::optional<ProviderVerdict> provider_verdict_from_name(std::string_view name)
{
    if (name == "allow") return ProviderVerdict::Allow;
    if (name == "deny") return ProviderVerdict::Deny;
    if (name == "remember-allow") return ProviderVerdict::RememberAllow;
    if (name == "remember-deny") return ProviderVerdict::RememberDeny;
    return std::nullopt;
}

SinkCatalog parse_sink_catalog(const std::string& text)
{
    SinkCatalog catalog;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::vector<std::string> words = split_words(line);
        if (words.empty()) continue;
        if (words[0] != "sink" || words.size() < 4 || words[2] != "category") {
            throw Error(Errc::SyntaxError,
                        "expected: sink <api> category <string> [permission <name>]", line_no);
        }
        SinkCatalogEntry entry;
        entry.category = words[3];
        if (words.size() > 4) {
            if (words.size() != 6 || words[4] != "permission") {
                throw Error(Errc::SyntaxError, "trailing tokens after category", line_no);
            }
            entry.permission = words[5];
        }
        if (!catalog.entries.emplace(words[1], std::move(entry)).second) {
            throw Error(Errc::DuplicateSink, "duplicate sink '" + words[1] + "'", line_no);
        }
    }
    if (catalog.entries.empty()) {
        throw Error(Errc::EmptyCatalog, "sink catalog must not be empty");
    }
    return catalog;
}

SinkCatalog load_sink_catalog_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::SyntaxError, "cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sink_catalog(buf.str());
}

std::optional<ProviderVerdict> ScriptedDecisionProvider::decide(const AlertPayload&)
{
    invocations_++;
    if (queue_.empty()) return std::nullopt;
    ProviderVerdict v = queue_.front();
    queue_.erase(queue_.begin());
    return v;
}

std::optional<ProviderVerdict> ask_with_timeout(std::shared_ptr<DecisionProvider> provider,
                                                const AlertPayload& payload,
                                                std::int64_t timeout_ms)
{
    if (!provider) return std::nullopt;

    // The provider runs on a thread we can walk away from; it keeps itself
    // alive through the shared_ptr, and the promise's shared state outlives
    // an abandoned wait.
    auto promise = std::make_shared<std::promise<std::optional<ProviderVerdict>>>();
    std::future<std::optional<ProviderVerdict>> future = promise->get_future();
    std::thread([provider, payload, promise]() {
        try {
            promise->set_value(provider->decide(payload));
        } catch (...) {
            promise->set_value(std::nullopt);
        }
    }).detach();

    if (future.wait_for(std::chrono::milliseconds(timeout_ms)) != std::future_status::ready) {
        return std::nullopt;
    }
    return future.get();
}

Decision SpacState::decide(const AlertPayload& payload, const std::string& cache_key,
                           bool external, std::int64_t now,
                           std::shared_ptr<DecisionProvider> provider,
                           bool apply_sink_filter)
{
    if (!external) {
        return {Verdict::Allow, "internal", "request never left the app"};
    }

    auto key = std::make_tuple(payload.caller, payload.component, cache_key);
    if (auto it = cache_.find(key); it != cache_.end()) {
        return {it->second, "remembered", "remembered decision for " + cache_key};
    }

    if (apply_sink_filter && !sink_param_blacklist.empty()) {
        for (const std::string& param : payload.params) {
            for (const std::string& keyword : sink_param_blacklist) {
                if (icontains(param, keyword)) {
                    return {Verdict::Deny, "sink-filter",
                            "sink parameter matches blacklisted keyword \"" + keyword + "\""};
                }
            }
        }
    }

    std::vector<std::int64_t>& times = alert_times_[payload.caller];
    std::erase_if(times, [&](std::int64_t t) { return t <= now - rate_limit.slot_ms; });
    if (static_cast<int>(times.size()) >= rate_limit.max_alerts) {
        return {Verdict::Deny, "rate-limit", "alert budget exhausted for " + payload.caller};
    }
    times.push_back(now);

    std::optional<ProviderVerdict> answer = ask_with_timeout(std::move(provider), payload,
                                                             timeout_ms);
    if (!answer) {
        return {Verdict::Deny, "timeout", "no decision within " + std::to_string(timeout_ms) + " ms"};
    }
    switch (*answer) {
        case ProviderVerdict::Allow: return {Verdict::Allow, "user", "user allowed"};
        case ProviderVerdict::Deny: return {Verdict::Deny, "user", "user denied"};
        case ProviderVerdict::RememberAllow:
            cache_[key] = Verdict::Allow;
            return {Verdict::Allow, "user", "user allowed (remembered)"};
        case ProviderVerdict::RememberDeny:
            cache_[key] = Verdict::Deny;
            return {Verdict::Deny, "user", "user denied (remembered)"};
    }
    return {Verdict::Deny, "timeout", "unreachable"};
}

Decision intercept_sink(SpacState& spac, const SinkCatalog& catalog, const SinkEvent& ev,
                        const CallContext& ctx, std::shared_ptr<DecisionProvider> provider)
{
    if (!catalog.contains(ev.sink_api)) {
        throw Error(Errc::UnknownSink, "sink not in catalog: " + ev.sink_api);
    }
    AlertPayload payload;
    payload.caller = ev.caller;
    payload.callee_package = ctx.id_v;
    payload.component = ev.callee_component;
    payload.entry_function = ctx.entry_function;
    payload.sink_or_entry = ev.sink_api;
    payload.params = ev.sink_params;
    return spac.decide(payload, "sink:" + ev.sink_api, ctx.external, ev.clock_now,
                       std::move(provider), /*apply_sink_filter=*/true);
}

Decision resolve_alert(SpacState& spac, const CallContext& ctx,
                       std::shared_ptr<DecisionProvider> provider)
{
    AlertPayload payload;
    payload.caller = ctx.id_a;
    payload.callee_package = ctx.id_v;
    payload.component = ctx.id_v + "/" + ctx.callee_component;
    payload.entry_function = ctx.entry_function;
    payload.sink_or_entry = "EEC-entry";
    payload.params = ctx.input_params;
    return spac.decide(payload, "entry:" + ctx.entry_function, ctx.external, ctx.clock_now,
                       std::move(provider));
}

} // namespace hijackguard
