// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#ifndef HIJACKGUARD_POLICY_DSL_HPP
#define HIJACKGUARD_POLICY_DSL_HPP

#include <string>

#include "hijackguard/epac.hpp"

namespace hijackguard {

// Line-oriented developer policy DSL:
//
//   rule <id> priority <int> <allow|deny|alert> when <cond> [and <cond>]*
//
// where cond = <field> <==|!=|contains> "<literal>" and field is one of
// caller.package, caller.signature, callee.package, callee.component,
// callee.kind, callee.export, entry.function, input.action, input.uri,
// input.param. '#' starts a comment.
//
// input.param is multi-valued: == and contains match when ANY parameter
// satisfies the operator; != holds when NO parameter equals the literal.
CustomRuleSet parse_policy_dsl(const std::string& text);

CustomRuleSet load_policy_file(const std::string& path);

} // namespace hijackguard

#endif
