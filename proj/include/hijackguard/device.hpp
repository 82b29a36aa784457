// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#ifndef HIJACKGUARD_DEVICE_HPP
#define HIJACKGUARD_DEVICE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hijackguard/manifest.hpp"
#include "hijackguard/registry.hpp"

namespace hijackguard {

struct CrashEvent {
    std::string caller;
    std::string callee_component;   // qualified "package/name"
    std::int64_t timestamp = 0;
};

// Registry entry for a custom permission name. The level is fixed by the
// FIRST installer that defined the name; later definitions are ignored.
// This is the pre-claim flaw P1 exists to catch.
struct PermRecord {
    std::string definer;
    PermLevel level = PermLevel::Normal;
    std::size_t install_index = 0;
};

struct InstallReport {
    // Permission names this app defined that were already claimed by an
    // earlier installer (the pre-claim event, seen from either side).
    std::vector<std::string> ignored_definitions;
    // Install-time grant resolution for each used permission, in manifest order.
    std::vector<std::pair<std::string, bool>> grants;
};

// The simulated device: installed apps in install order, the first-definer-
// wins permission registry, recorded grants, the crash log consumed by P5,
// and a simulated millisecond clock. Mutated only through these operations;
// the engine guarantees single-writer access.
class DeviceState {
public:
    explicit DeviceState(SystemRegistry sys = {});

    const SystemRegistry& system() const { return sys_; }

    InstallReport install(const AppManifest& m);
    void uninstall(const std::string& package);

    bool is_installed(const std::string& package) const;
    const AppManifest* find_app(const std::string& package) const;
    const std::vector<AppManifest>& apps() const { return apps_; }

    const std::map<std::string, PermRecord>& perm_registry() const { return perm_registry_; }

    // Grant semantics by level: normal and dangerous are granted on request;
    // signature (and signatureOrSystem) require the requester's signature to
    // equal the DEFINER's. The definer comes from the registry, which is what makes
    // the pre-claim downgrade observable. System-only permissions are never
    // granted to simulated apps.
    bool resolve_grant(const std::string& package, const std::string& permission) const;

    void record_crash(const std::string& caller, const std::string& callee_component,
                      std::int64_t now);
    // Crashes with matching keys and timestamp in (now - window_ms, now].
    int crash_count(const std::string& caller, const std::string& callee_component,
                    std::int64_t window_ms, std::int64_t now) const;
    const std::vector<CrashEvent>& crash_log() const { return crash_log_; }

    std::int64_t advance_clock(std::int64_t delta_ms);
    std::int64_t clock() const { return clock_; }

    const std::map<std::pair<std::string, std::string>, bool>& grants() const
    {
        return grants_;
    }

private:
    SystemRegistry sys_;
    std::vector<AppManifest> apps_;   // install order
    std::map<std::string, PermRecord> perm_registry_;
    std::map<std::pair<std::string, std::string>, bool> grants_;
    std::vector<CrashEvent> crash_log_;
    std::int64_t clock_ = 0;
};

} // namespace hijackguard

#endif
