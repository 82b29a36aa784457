// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#ifndef HIJACKGUARD_REQUEST_HPP
#define HIJACKGUARD_REQUEST_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hijackguard {

// The caller-side IPC APIs the simulator dispatches. Each maps to the entry
// function(s) of the matching component kind.
enum class CallerApi {
    StartActivity,
    StartActivityForResult,
    StartService,
    BindService,
    BinderCall,
    SendBroadcast,
    SendOrderedBroadcast,
    Query,
    Insert,
    BulkInsert,
    Update,
    Delete,
    OpenFileDescriptor,
};

std::string_view caller_api_name(CallerApi api);
std::optional<CallerApi> caller_api_from_name(std::string_view name);

bool is_activity_api(CallerApi api);
bool is_service_api(CallerApi api);
bool is_broadcast_api(CallerApi api);
bool is_provider_api(CallerApi api);

// The extras key stamped onto relayed IPC so the defense can attribute an
// externally originated call chain.
inline constexpr std::string_view kOriginFlagKey = "seclibflag";
inline constexpr std::string_view kOriginFlagOutside = "outside";

// The reserved sender identity for OS-originated broadcasts.
inline constexpr std::string_view kSystemSender = "system";

// One inbound IPC call. The target is either explicit (package + component)
// or, for broadcasts with an empty target_package, resolved by action
// matching against every installed receiver.
struct IpcRequest {
    std::string caller;
    CallerApi api = CallerApi::Query;

    std::string target_package;
    std::string target_component;

    std::string binder_function;               // binderCall only
    std::optional<std::string> input_action;
    std::optional<std::string> input_uri;
    std::map<std::string, std::optional<std::string>> extras;
    bool single_top = false;                   // FLAG_ACTIVITY_SINGLE_TOP
    std::vector<std::string> call_params;      // provider projection/selection etc.

    bool has_explicit_target() const { return !target_package.empty(); }

    // Value of the relay-origin extra, when stamped.
    std::optional<std::string> origin_flag() const
    {
        auto it = extras.find(std::string(kOriginFlagKey));
        if (it == extras.end() || !it->second.has_value()) {
            return std::nullopt;
        }
        return it->second;
    }

    std::string target_id() const { return target_package + "/" + target_component; }
};

} // namespace hijackguard

#endif
