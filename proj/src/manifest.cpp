// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "hijackguard/manifest.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hijackguard/errors.hpp"
#include "hijackguard/registry.hpp"
#include "xml.hpp"

namespace hijackguard {
namespace {

// Android 4.2 is API level 17: providers lose the automatic-export default
// from this SDK on.
constexpr int kProviderExportCutoffSdk = 17;

std::vector<std::string> split_csv(const std::string& value)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : value) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

[[noreturn]] void reject(Errc code, const std::string& what, int line)
{
    throw Error(code, what, line);
}

void require_attrs(const xml::Node& node, std::initializer_list<std::string_view> allowed)
{
    for (const auto& [key, value] : node.attrs) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            reject(Errc::MalformedDocument, "unknown attribute '" + key + "' on <" + node.name + ">",
                   node.line);
        }
    }
}

const std::string& need_attr(const xml::Node& node, std::string_view key)
{
    const std::string* value = node.attr(key);
    if (!value) {
        reject(Errc::MalformedDocument,
               "<" + node.name + "> requires attribute '" + std::string(key) + "'", node.line);
    }
    return *value;
}

RelayDecl parse_relay(const xml::Node& node)
{
    require_attrs(node, {"api", "target", "action", "binder"});
    RelayDecl decl;
    const std::string& api = need_attr(node, "api");
    auto parsed = caller_api_from_name(api);
    if (!parsed) reject(Errc::MalformedDocument, "unknown relay api '" + api + "'", node.line);
    decl.api = *parsed;
    if (const std::string* target = node.attr("target")) {
        auto slash = target->find('/');
        if (slash == std::string::npos) {
            reject(Errc::MalformedDocument, "relay target must be <package>/<component>", node.line);
        }
        decl.target_package = target->substr(0, slash);
        decl.target_component = target->substr(slash + 1);
    } else if (!is_broadcast_api(decl.api)) {
        reject(Errc::MalformedDocument, "relay without a target must be a broadcast api", node.line);
    }
    if (const std::string* action = node.attr("action")) decl.action = *action;
    if (const std::string* binder = node.attr("binder")) decl.binder_function = *binder;
    if (!node.children.empty() || !node.text.empty()) {
        reject(Errc::MalformedDocument, "<relay> must be empty", node.line);
    }
    return decl;
}

SinkDecl parse_sink_call(const xml::Node& node)
{
    require_attrs(node, {"api", "params"});
    SinkDecl decl;
    decl.api = need_attr(node, "api");
    if (const std::string* params = node.attr("params")) decl.params = split_csv(*params);
    if (!node.children.empty() || !node.text.empty()) {
        reject(Errc::MalformedDocument, "<sink-call> must be empty", node.line);
    }
    return decl;
}

ComponentDecl parse_component(const xml::Node& node)
{
    require_attrs(node, {"type", "name", "exported", "permission", "authority", "requires-extra"});
    ComponentDecl comp;
    comp.name = need_attr(node, "name");
    const std::string& type = need_attr(node, "type");
    auto kind = component_kind_from_name(type);
    if (!kind) reject(Errc::UnknownKind, "unknown component type '" + type + "'", node.line);
    comp.kind = *kind;

    if (const std::string* exported = node.attr("exported")) {
        if (*exported == "true") {
            comp.exported_attr = ExportedAttr::True;
        } else if (*exported == "false") {
            comp.exported_attr = ExportedAttr::False;
        } else {
            reject(Errc::MalformedDocument, "exported must be \"true\" or \"false\"", node.line);
        }
    }
    if (const std::string* perm = node.attr("permission")) comp.permission_attr = *perm;
    if (const std::string* authority = node.attr("authority")) comp.authority = *authority;
    if (const std::string* extras = node.attr("requires-extra")) {
        comp.required_extras = split_csv(*extras);
    }

    for (const xml::Node& child : node.children) {
        if (child.name == "intent-filter") {
            require_attrs(child, {});
            for (const xml::Node& action : child.children) {
                if (action.name != "action") {
                    reject(Errc::MalformedDocument,
                           "unknown element <" + action.name + "> in <intent-filter>", action.line);
                }
                require_attrs(action, {"name"});
                comp.intent_actions.push_back(need_attr(action, "name"));
            }
        } else if (child.name == "binder-interface") {
            require_attrs(child, {"name"});
            comp.binder_interfaces.push_back(need_attr(child, "name"));
        } else if (child.name == "table") {
            require_attrs(child, {"name"});
            const std::string& table_name = need_attr(child, "name");
            if (comp.tables.count(table_name)) {
                reject(Errc::MalformedDocument, "duplicate table '" + table_name + "'", child.line);
            }
            std::vector<std::string> rows;
            for (const xml::Node& row : child.children) {
                if (row.name != "row") {
                    reject(Errc::MalformedDocument, "unknown element <" + row.name + "> in <table>",
                           row.line);
                }
                require_attrs(row, {});
                rows.push_back(row.text);
            }
            comp.tables.emplace(table_name, std::move(rows));
        } else if (child.name == "relay") {
            comp.relays.push_back(parse_relay(child));
        } else if (child.name == "sink-call") {
            comp.sink_calls.push_back(parse_sink_call(child));
        } else {
            reject(Errc::MalformedDocument, "unknown element <" + child.name + "> in <component>",
                   child.line);
        }
    }

    if (!comp.binder_interfaces.empty() && comp.kind != ComponentKind::Service) {
        reject(Errc::MalformedDocument, "binder-interface is only valid on services", node.line);
    }
    if ((!comp.authority.empty() || !comp.tables.empty()) && comp.kind != ComponentKind::Provider) {
        reject(Errc::MalformedDocument, "authority/tables are only valid on providers", node.line);
    }
    return comp;
}

} // namespace

std::string_view perm_level_name(PermLevel level)
{
    switch (level) {
        case PermLevel::Normal: return "normal";
        case PermLevel::Dangerous: return "dangerous";
        case PermLevel::Signature: return "signature";
        case PermLevel::SignatureOrSystem: return "signatureOrSystem";
    }
    return "?";
}

std::optional<PermLevel> perm_level_from_name(std::string_view name)
{
    if (name == "normal") return PermLevel::Normal;
    if (name == "dangerous") return PermLevel::Dangerous;
    if (name == "signature") return PermLevel::Signature;
    if (name == "signatureOrSystem") return PermLevel::SignatureOrSystem;
    return std::nullopt;
}

std::string_view component_kind_name(ComponentKind kind)
{
    switch (kind) {
        case ComponentKind::Activity: return "activity";
        case ComponentKind::Service: return "service";
        case ComponentKind::Receiver: return "receiver";
        case ComponentKind::Provider: return "provider";
    }
    return "?";
}

std::optional<ComponentKind> component_kind_from_name(std::string_view name)
{
    if (name == "activity") return ComponentKind::Activity;
    if (name == "service") return ComponentKind::Service;
    if (name == "receiver") return ComponentKind::Receiver;
    if (name == "provider") return ComponentKind::Provider;
    return std::nullopt;
}

std::string_view export_status_name(ExportStatus status)
{
    switch (status) {
        case ExportStatus::ExplicitExported: return "explicit-exported";
        case ExportStatus::ExplicitNotExported: return "explicit-not-exported";
        case ExportStatus::ImplicitExported: return "implicit-exported";
        case ExportStatus::NotExported: return "not-exported";
    }
    return "?";
}

bool is_exported(ExportStatus status)
{
    return status == ExportStatus::ExplicitExported || status == ExportStatus::ImplicitExported;
}

bool ComponentDecl::has_action(std::string_view action) const
{
    return std::find(intent_actions.begin(), intent_actions.end(), action)
        != intent_actions.end();
}

const ComponentDecl* AppManifest::find_component(std::string_view name) const
{
    for (const ComponentDecl& comp : components) {
        if (comp.name == name) return &comp;
    }
    return nullptr;
}

bool AppManifest::uses_permission(std::string_view name) const
{
    return std::find(used_permissions.begin(), used_permissions.end(), name)
        != used_permissions.end();
}

const PermissionDef* AppManifest::find_permission_def(std::string_view name) const
{
    for (const PermissionDef& def : defined_permissions) {
        if (def.name == name) return &def;
    }
    return nullptr;
}

ExportStatus effective_export(const ComponentDecl& comp, int target_sdk)
{
    switch (comp.exported_attr) {
        case ExportedAttr::True: return ExportStatus::ExplicitExported;
        case ExportedAttr::False: return ExportStatus::ExplicitNotExported;
        case ExportedAttr::Absent: break;
    }
    if (comp.kind == ComponentKind::Provider) {
        return target_sdk < kProviderExportCutoffSdk ? ExportStatus::ImplicitExported
                                                     : ExportStatus::NotExported;
    }
    return comp.intent_actions.empty() ? ExportStatus::NotExported
                                       : ExportStatus::ImplicitExported;
}

AppManifest parse_manifest(const std::string& text)
{
    xml::Node root = xml::parse(text);
    if (root.name != "app") {
        reject(Errc::MalformedDocument, "root element must be <app>", root.line);
    }
    require_attrs(root, {"package", "signature", "targetSdk"});

    AppManifest m;
    if (const std::string* package = root.attr("package"); package && !package->empty()) {
        m.package_name = *package;
    } else {
        reject(Errc::MissingPackageName, "<app> requires a non-empty package attribute", root.line);
    }
    m.signature_key = need_attr(root, "signature");
    const std::string& sdk = need_attr(root, "targetSdk");
    try {
        std::size_t used = 0;
        m.target_sdk = std::stoi(sdk, &used);
        if (used != sdk.size() || m.target_sdk < 1) throw std::invalid_argument(sdk);
    } catch (const std::exception&) {
        reject(Errc::MalformedDocument, "targetSdk must be an integer >= 1", root.line);
    }

    std::set<std::string> component_names;
    for (const xml::Node& child : root.children) {
        if (child.name == "defines-permission") {
            require_attrs(child, {"name", "level"});
            PermissionDef def;
            def.name = need_attr(child, "name");
            const std::string& level = need_attr(child, "level");
            auto parsed = perm_level_from_name(level);
            if (!parsed) {
                reject(Errc::MalformedDocument, "unknown permission level '" + level + "'",
                       child.line);
            }
            def.level = *parsed;
            m.defined_permissions.push_back(std::move(def));
        } else if (child.name == "uses-permission") {
            require_attrs(child, {"name"});
            m.used_permissions.push_back(need_attr(child, "name"));
        } else if (child.name == "component") {
            ComponentDecl comp = parse_component(child);
            if (!component_names.insert(comp.name).second) {
                reject(Errc::DuplicateComponent, "duplicate component '" + comp.name + "'",
                       child.line);
            }
            m.components.push_back(std::move(comp));
        } else {
            reject(Errc::MalformedDocument, "unknown element <" + child.name + "> in <app>",
                   child.line);
        }
    }
    return m;
}

std::string serialize_manifest(const AppManifest& m)
{
    std::ostringstream os;
    os << "<app package=\"" << xml::escape(m.package_name) << "\" signature=\""
       << xml::escape(m.signature_key) << "\" targetSdk=\"" << m.target_sdk << "\">\n";
    for (const PermissionDef& def : m.defined_permissions) {
        os << "  <defines-permission name=\"" << xml::escape(def.name) << "\" level=\""
           << perm_level_name(def.level) << "\"/>\n";
    }
    for (const std::string& perm : m.used_permissions) {
        os << "  <uses-permission name=\"" << xml::escape(perm) << "\"/>\n";
    }
    for (const ComponentDecl& comp : m.components) {
        os << "  <component type=\"" << component_kind_name(comp.kind) << "\" name=\""
           << xml::escape(comp.name) << "\"";
        if (comp.exported_attr == ExportedAttr::True) os << " exported=\"true\"";
        if (comp.exported_attr == ExportedAttr::False) os << " exported=\"false\"";
        if (comp.permission_attr) os << " permission=\"" << xml::escape(*comp.permission_attr) << "\"";
        if (!comp.authority.empty()) os << " authority=\"" << xml::escape(comp.authority) << "\"";
        if (!comp.required_extras.empty()) {
            os << " requires-extra=\"";
            for (std::size_t i = 0; i < comp.required_extras.size(); ++i) {
                if (i) os << ",";
                os << xml::escape(comp.required_extras[i]);
            }
            os << "\"";
        }
        os << ">\n";
        if (!comp.intent_actions.empty()) {
            os << "    <intent-filter>\n";
            for (const std::string& action : comp.intent_actions) {
                os << "      <action name=\"" << xml::escape(action) << "\"/>\n";
            }
            os << "    </intent-filter>\n";
        }
        for (const std::string& fn : comp.binder_interfaces) {
            os << "    <binder-interface name=\"" << xml::escape(fn) << "\"/>\n";
        }
        for (const auto& [table, rows] : comp.tables) {
            os << "    <table name=\"" << xml::escape(table) << "\">\n";
            for (const std::string& row : rows) {
                os << "      <row>" << xml::escape(row) << "</row>\n";
            }
            os << "    </table>\n";
        }
        for (const RelayDecl& decl : comp.relays) {
            os << "    <relay api=\"" << caller_api_name(decl.api) << "\"";
            if (!decl.target_package.empty()) {
                os << " target=\"" << xml::escape(decl.target_package) << "/"
                   << xml::escape(decl.target_component) << "\"";
            }
            if (decl.action) os << " action=\"" << xml::escape(*decl.action) << "\"";
            if (!decl.binder_function.empty()) {
                os << " binder=\"" << xml::escape(decl.binder_function) << "\"";
            }
            os << "/>\n";
        }
        for (const SinkDecl& decl : comp.sink_calls) {
            os << "    <sink-call api=\"" << xml::escape(decl.api) << "\"";
            if (!decl.params.empty()) {
                os << " params=\"";
                for (std::size_t i = 0; i < decl.params.size(); ++i) {
                    if (i) os << ",";
                    os << xml::escape(decl.params[i]);
                }
                os << "\"";
            }
            os << "/>\n";
        }
        os << "  </component>\n";
    }
    os << "</app>\n";
    return os.str();
}

std::string_view finding_code_name(FindingCode code)
{
    switch (code) {
        case FindingCode::ImplicitExport: return "IMPLICIT_EXPORT";
        case FindingCode::CustomPermPreclaimable: return "CUSTOM_PERM_PRECLAIMABLE";
        case FindingCode::SysonlyActionNoGuard: return "SYSONLY_ACTION_NO_GUARD";
        case FindingCode::DanglingPermission: return "DANGLING_PERMISSION";
    }
    return "?";
}

std::vector<Finding> audit_manifest(const AppManifest& m, const SystemRegistry& sys)
{
    std::vector<Finding> findings;
    for (const ComponentDecl& comp : m.components) {
        if (effective_export(comp, m.target_sdk) == ExportStatus::ImplicitExported) {
            findings.push_back({FindingCode::ImplicitExport, comp.name,
                                std::string(component_kind_name(comp.kind))
                                    + " is exported without an explicit attribute"});
        }
        if (comp.permission_attr && !sys.is_sys_perm(*comp.permission_attr)) {
            const PermissionDef* def = m.find_permission_def(*comp.permission_attr);
            if (def && def->level != PermLevel::Normal) {
                findings.push_back({FindingCode::CustomPermPreclaimable, comp.name,
                                    "guarded by custom " + std::string(perm_level_name(def->level))
                                        + "-level permission " + *comp.permission_attr
                                        + ", downgradeable by an earlier installer"});
            } else if (!def && !m.uses_permission(*comp.permission_attr)) {
                findings.push_back({FindingCode::DanglingPermission, comp.name,
                                    "permission " + *comp.permission_attr
                                        + " is neither defined, used, nor system"});
            }
        }
        bool sysonly_action = false;
        for (const std::string& action : comp.intent_actions) {
            if (sys.is_sys_only_action(action)) sysonly_action = true;
        }
        if (sysonly_action && !comp.permission_attr) {
            findings.push_back({FindingCode::SysonlyActionNoGuard, comp.name,
                                "listens for a system-only broadcast without a permission guard"});
        }
    }
    return findings;
}

} // namespace hijackguard
