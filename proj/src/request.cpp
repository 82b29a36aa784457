// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "hijackguard/request.hpp"

#include <array>
#include <utility>

namespace hijackguard {
namespace {

constexpr std::array<std::pair<CallerApi, std::string_view>, 13> kApiNames = {{
    {CallerApi::StartActivity, "startActivity"},
    {CallerApi::StartActivityForResult, "startActivityForResult"},
    {CallerApi::StartService, "startService"},
    {CallerApi::BindService, "bindService"},
    {CallerApi::BinderCall, "binderCall"},
    {CallerApi::SendBroadcast, "sendBroadcast"},
    {CallerApi::SendOrderedBroadcast, "sendOrderedBroadcast"},
    {CallerApi::Query, "query"},
    {CallerApi::Insert, "insert"},
    {CallerApi::BulkInsert, "bulkInsert"},
    {CallerApi::Update, "update"},
    {CallerApi::Delete, "delete"},
    {CallerApi::OpenFileDescriptor, "openFileDescriptor"},
}};

} // namespace

std::string_view caller_api_name(CallerApi api)
{
    for (const auto& [value, name] : kApiNames) {
        if (value == api) return name;
    }
    return "?";
}

std::optional<CallerApi> caller_api_from_name(std::string_view name)
{
    for (const auto& [value, n] : kApiNames) {
        if (n == name) return value;
    }
    return std::nullopt;
}

bool is_activity_api(CallerApi api)
{
    return api == CallerApi::StartActivity || api == CallerApi::StartActivityForResult;
}

bool is_service_api(CallerApi api)
{
    return api == CallerApi::StartService || api == CallerApi::BindService
        || api == CallerApi::BinderCall;
}

bool is_broadcast_api(CallerApi api)
{
    return api == CallerApi::SendBroadcast || api == CallerApi::SendOrderedBroadcast;
}

bool is_provider_api(CallerApi api)
{
    switch (api) {
        case CallerApi::Query:
        case CallerApi::Insert:
        case CallerApi::BulkInsert:
        case CallerApi::Update:
        case CallerApi::Delete:
        case CallerApi::OpenFileDescriptor: return true;
        default: return false;
    }
}

} // namespace hijackguard
