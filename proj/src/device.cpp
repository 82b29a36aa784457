// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "hijackguard/device.hpp"

#include <algorithm>
#include <stdexcept>

#include "hijackguard/errors.hpp"

namespace hijackguard {

DeviceState::DeviceState(SystemRegistry sys) : sys_(std::move(sys)) {}

bool DeviceState::is_installed(const std::string& package) const
{
    return find_app(package) != nullptr;
}

const AppManifest* DeviceState::find_app(const std::string& package) const
{
    for (const AppManifest& app : apps_) {
        if (app.package_name == package) return &app;
    }
    return nullptr;
}

InstallReport DeviceState::install(const AppManifest& m)
{
    if (is_installed(m.package_name)) {
        throw Error(Errc::DuplicatePackage, "package already installed: " + m.package_name);
    }
    apps_.push_back(m);
    std::size_t index = apps_.size() - 1;

    InstallReport report;
    for (const PermissionDef& def : m.defined_permissions) {
        // First definer wins; a later definition never overwrites the level.
        auto [it, inserted] =
            perm_registry_.emplace(def.name, PermRecord{m.package_name, def.level, index});
        if (!inserted) {
            report.ignored_definitions.push_back(def.name);
        }
    }
    for (const std::string& perm : m.used_permissions) {
        bool granted = false;
        if (sys_.is_sys_perm(perm) || perm_registry_.count(perm)) {
            granted = resolve_grant(m.package_name, perm);
        }
        grants_[{m.package_name, perm}] = granted;
        report.grants.emplace_back(perm, granted);
    }
    return report;
}

void DeviceState::uninstall(const std::string& package)
{
    auto it = std::find_if(apps_.begin(), apps_.end(), [&](const AppManifest& app) {
        return app.package_name == package;
    });
    if (it == apps_.end()) {
        throw Error(Errc::UnknownPackage, "package not installed: " + package);
    }
    apps_.erase(it);

    // Registry entries defined by this package go away, re-opening the name
    // for the next definer. Entries pre-claimed by OTHER packages stay.
    for (auto reg = perm_registry_.begin(); reg != perm_registry_.end();) {
        if (reg->second.definer == package) {
            reg = perm_registry_.erase(reg);
        } else {
            ++reg;
        }
    }
    for (auto grant = grants_.begin(); grant != grants_.end();) {
        if (grant->first.first == package) {
            grant = grants_.erase(grant);
        } else {
            ++grant;
        }
    }
}

bool DeviceState::resolve_grant(const std::string& package, const std::string& permission) const
{
    const AppManifest* app = find_app(package);
    if (!app) return false;
    if (!app->uses_permission(permission)) return false;

    if (sys_.is_sys_perm(permission)) {
        if (sys_.is_sys_only_perm(permission)) return false;
        PermLevel level = sys_.sys_perm_levels.at(permission);
        // No simulated app carries the platform signature.
        return level == PermLevel::Normal || level == PermLevel::Dangerous;
    }

    auto it = perm_registry_.find(permission);
    if (it == perm_registry_.end()) {
        throw Error(Errc::UnknownPermission, "permission not defined: " + permission);
    }
    switch (it->second.level) {
        case PermLevel::Normal:
        case PermLevel::Dangerous:
            // Dangerous auto-grants: the attack model assumes user consent.
            return true;
        case PermLevel::Signature:
        case PermLevel::SignatureOrSystem: {
            const AppManifest* definer = find_app(it->second.definer);
            return definer && definer->signature_key == app->signature_key;
        }
    }
    return false;
}

void DeviceState::record_crash(const std::string& caller, const std::string& callee_component,
                               std::int64_t now)
{
    if (!crash_log_.empty() && now < crash_log_.back().timestamp) {
        throw std::invalid_argument("crash timestamps must be non-decreasing");
    }
    crash_log_.push_back({caller, callee_component, now});
}

int DeviceState::crash_count(const std::string& caller, const std::string& callee_component,
                             std::int64_t window_ms, std::int64_t now) const
{
    int count = 0;
    for (const CrashEvent& ev : crash_log_) {
        if (ev.caller == caller && ev.callee_component == callee_component
            && ev.timestamp > now - window_ms && ev.timestamp <= now) {
            count++;
        }
    }
    return count;
}

std::int64_t DeviceState::advance_clock(std::int64_t delta_ms)
{
    if (delta_ms < 0) {
        throw std::invalid_argument("clock can only move forward");
    }
    clock_ += delta_ms;
    return clock_;
}

} // namespace hijackguard
