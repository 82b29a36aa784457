// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "hijackguard/registry.hpp"

#include <fstream>
#include <sstream>

#include "hijackguard/errors.hpp"
#include "xml.hpp"

namespace hijackguard {
namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::MalformedDocument, "cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

SystemRegistry parse_system_registry(const std::string& text)
{
    xml::Node root = xml::parse(text);
    if (root.name != "system") {
        throw Error(Errc::MalformedDocument, "root element must be <system>", root.line);
    }
    SystemRegistry sys;
    for (const xml::Node& child : root.children) {
        const std::string* name = child.attr("name");
        if (!name || name->empty()) {
            throw Error(Errc::MalformedDocument, "<" + child.name + "> requires a name",
                        child.line);
        }
        bool system_only = false;
        if (const std::string* flag = child.attr("systemOnly")) {
            if (*flag != "true" && *flag != "false") {
                throw Error(Errc::MalformedDocument, "systemOnly must be true or false",
                            child.line);
            }
            system_only = *flag == "true";
        }
        if (child.name == "permission") {
            const std::string* level = child.attr("level");
            if (!level) {
                throw Error(Errc::MalformedDocument, "<permission> requires a level", child.line);
            }
            auto parsed = perm_level_from_name(*level);
            if (!parsed) {
                throw Error(Errc::MalformedDocument, "unknown permission level '" + *level + "'",
                            child.line);
            }
            sys.sys_perms.insert(*name);
            sys.sys_perm_levels[*name] = *parsed;
            if (system_only) sys.sys_only_perms.insert(*name);
        } else if (child.name == "action") {
            sys.sys_actions.insert(*name);
            if (system_only) sys.sys_only_actions.insert(*name);
        } else {
            throw Error(Errc::MalformedDocument, "unknown element <" + child.name + "> in <system>",
                        child.line);
        }
    }
    return sys;
}

SystemRegistry load_system_registry_file(const std::string& path)
{
    return parse_system_registry(read_file(path));
}

std::string_view errc_name(Errc code)
{
    switch (code) {
        case Errc::MalformedDocument: return "MalformedDocument";
        case Errc::UnknownKind: return "UnknownKind";
        case Errc::DuplicateComponent: return "DuplicateComponent";
        case Errc::MissingPackageName: return "MissingPackageName";
        case Errc::DuplicatePackage: return "DuplicatePackage";
        case Errc::UnknownPackage: return "UnknownPackage";
        case Errc::UnknownPermission: return "UnknownPermission";
        case Errc::KindMismatch: return "KindMismatch";
        case Errc::UnknownBinderFunction: return "UnknownBinderFunction";
        case Errc::UnknownTarget: return "UnknownTarget";
        case Errc::SyntaxError: return "SyntaxError";
        case Errc::UnknownField: return "UnknownField";
        case Errc::DuplicateRuleId: return "DuplicateRuleId";
        case Errc::DuplicateSink: return "DuplicateSink";
        case Errc::EmptyCatalog: return "EmptyCatalog";
        case Errc::UnknownSink: return "UnknownSink";
    }
    return "?";
}

} // namespace hijackguard
