// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#ifndef HIJACKGUARD_MANIFEST_HPP
#define HIJACKGUARD_MANIFEST_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hijackguard/request.hpp"

namespace hijackguard {

struct SystemRegistry;

enum class PermLevel { Normal, Dangerous, Signature, SignatureOrSystem };

std::string_view perm_level_name(PermLevel level);
std::optional<PermLevel> perm_level_from_name(std::string_view name);

struct PermissionDef {
    std::string name;
    PermLevel level = PermLevel::Normal;

    friend bool operator==(const PermissionDef&, const PermissionDef&) = default;
};

enum class ComponentKind { Activity, Service, Receiver, Provider };

std::string_view component_kind_name(ComponentKind kind);
std::optional<ComponentKind> component_kind_from_name(std::string_view name);

enum class ExportedAttr { True, False, Absent };

// Scenario behavior: when this component's entry handler runs, it relays the
// request onward as a fresh IPC call. Relays of externally originated
// requests are stamped with the origin flag.
struct RelayDecl {
    CallerApi api = CallerApi::Query;
    std::string target_package;
    std::string target_component;
    std::optional<std::string> action;         // forwarded as input_action
    std::string binder_function;               // binderCall relays only

    friend bool operator==(const RelayDecl&, const RelayDecl&) = default;
};

// Scenario behavior: when this component's entry handler runs, it invokes a
// sensitive sink API, which SP-AC intercepts.
struct SinkDecl {
    std::string api;
    std::vector<std::string> params;

    friend bool operator==(const SinkDecl&, const SinkDecl&) = default;
};

struct ComponentDecl {
    std::string name;
    ComponentKind kind = ComponentKind::Activity;
    ExportedAttr exported_attr = ExportedAttr::Absent;
    std::optional<std::string> permission_attr;
    std::vector<std::string> intent_actions;
    std::vector<std::string> binder_interfaces;        // services only
    std::string authority;                             // providers only
    std::vector<std::string> required_extras;          // absence crashes the handler
    std::map<std::string, std::vector<std::string>> tables;  // providers only
    std::vector<RelayDecl> relays;
    std::vector<SinkDecl> sink_calls;

    bool has_action(std::string_view action) const;

    friend bool operator==(const ComponentDecl&, const ComponentDecl&) = default;
};

struct AppManifest {
    std::string package_name;
    std::string signature_key;
    int target_sdk = 1;
    std::vector<PermissionDef> defined_permissions;
    std::vector<std::string> used_permissions;
    std::vector<ComponentDecl> components;

    const ComponentDecl* find_component(std::string_view name) const;
    bool uses_permission(std::string_view name) const;
    const PermissionDef* find_permission_def(std::string_view name) const;

    friend bool operator==(const AppManifest&, const AppManifest&) = default;
};

// Effective export status of one component under one target SDK level.
// Explicit attributes always win; otherwise providers follow the pre-SDK-17
// automatic-export rule and the other kinds follow the intent-filter rule.
enum class ExportStatus { ExplicitExported, ExplicitNotExported, ImplicitExported, NotExported };

std::string_view export_status_name(ExportStatus status);

bool is_exported(ExportStatus status);

ExportStatus effective_export(const ComponentDecl& comp, int target_sdk);

// Parses the strict manifest dialect. Unknown elements and attributes are
// rejected. Dangling permission references parse fine; audit flags them.
AppManifest parse_manifest(const std::string& text);

// Canonical writer; parse_manifest(serialize_manifest(m)) == m.
std::string serialize_manifest(const AppManifest& m);

enum class FindingCode {
    ImplicitExport,
    CustomPermPreclaimable,
    SysonlyActionNoGuard,
    DanglingPermission,
};

std::string_view finding_code_name(FindingCode code);

struct Finding {
    FindingCode code;
    std::string component;
    std::string detail;

    friend bool operator==(const Finding&, const Finding&) = default;
};

// Static exposure audit; pure, findings ordered by component then code.
std::vector<Finding> audit_manifest(const AppManifest& m, const SystemRegistry& sys);

} // namespace hijackguard

#endif
