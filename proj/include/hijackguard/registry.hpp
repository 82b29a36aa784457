// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#ifndef HIJACKGUARD_REGISTRY_HPP
#define HIJACKGUARD_REGISTRY_HPP

#include <map>
#include <set>
#include <string>

#include "hijackguard/manifest.hpp"

namespace hijackguard {

// System-defined permissions and actions, with the subsets reserved to the
// OS. sys_only_actions and sys_only_perms are subsets of the full sets.
struct SystemRegistry {
    std::set<std::string> sys_perms;
    std::set<std::string> sys_actions;
    std::set<std::string> sys_only_actions;
    std::set<std::string> sys_only_perms;
    std::map<std::string, PermLevel> sys_perm_levels;

    bool is_sys_perm(const std::string& name) const { return sys_perms.count(name) != 0; }
    bool is_sys_action(const std::string& name) const { return sys_actions.count(name) != 0; }
    bool is_sys_only_action(const std::string& name) const
    {
        return sys_only_actions.count(name) != 0;
    }
    bool is_sys_only_perm(const std::string& name) const
    {
        return sys_only_perms.count(name) != 0;
    }
};

// Parses the registry file dialect:
//   <system>
//     <permission name="..." level="..." [systemOnly="true"]/>
//     <action name="..." [systemOnly="true"]/>
//   </system>
SystemRegistry parse_system_registry(const std::string& text);

SystemRegistry load_system_registry_file(const std::string& path);

} // namespace hijackguard

#endif
