// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "hijackguard/policy_dsl.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "hijackguard/errors.hpp"

namespace hijackguard {
namespace {

const std::set<std::string> kFields = {
    "caller.package", "caller.signature", "callee.package", "callee.component",
    "callee.kind",    "callee.export",    "entry.function",  "input.action",
    "input.uri",      "input.param",
};

// Whitespace-separated tokens; a double quote toggles literal mode anywhere
// in a token, so `== "a b"` yields the token `a b` (marked quoted).
struct Token {
    std::string text;
    bool quoted = false;
};

std::vector<Token> tokenize(const std::string& line, int line_no)
{
    std::vector<Token> tokens;
    std::string cur;
    bool in_quotes = false;
    bool cur_quoted = false;
    bool have_cur = false;
    for (char c : line) {
        if (c == '#' && !in_quotes) break;
        if (c == '"') {
            in_quotes = !in_quotes;
            cur_quoted = true;
            have_cur = true;
            continue;
        }
        if (!in_quotes && std::isspace(static_cast<unsigned char>(c))) {
            if (have_cur) tokens.push_back({cur, cur_quoted});
            cur.clear();
            cur_quoted = false;
            have_cur = false;
            continue;
        }
        cur.push_back(c);
        have_cur = true;
    }
    if (in_quotes) {
        throw Error(Errc::SyntaxError, "unterminated string literal", line_no);
    }
    if (have_cur) tokens.push_back({cur, cur_quoted});
    return tokens;
}

RuleOp parse_op(const std::string& text, int line_no)
{
    if (text == "==") return RuleOp::Eq;
    if (text == "!=") return RuleOp::Ne;
    if (text == "contains") return RuleOp::Contains;
    throw Error(Errc::SyntaxError, "expected ==, != or contains, got '" + text + "'", line_no);
}

} // namespace

CustomRuleSet parse_policy_dsl(const std::string& text)
{
    CustomRuleSet set;
    std::set<std::string> seen_ids;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        std::vector<Token> tokens = tokenize(line, line_no);
        if (tokens.empty()) continue;

        std::size_t i = 0;
        auto next = [&](const char* what) -> const Token& {
            if (i >= tokens.size()) {
                throw Error(Errc::SyntaxError, std::string("expected ") + what, line_no);
            }
            return tokens[i++];
        };

        if (next("'rule'").text != "rule") {
            throw Error(Errc::SyntaxError, "every statement starts with 'rule'", line_no);
        }
        CustomRule rule;
        rule.id = next("rule id").text;
        if (!seen_ids.insert(rule.id).second) {
            throw Error(Errc::DuplicateRuleId, "duplicate rule id '" + rule.id + "'", line_no);
        }
        if (next("'priority'").text != "priority") {
            throw Error(Errc::SyntaxError, "expected 'priority'", line_no);
        }
        const std::string& prio = next("priority value").text;
        try {
            std::size_t used = 0;
            rule.priority = std::stoi(prio, &used);
            if (used != prio.size()) throw std::invalid_argument(prio);
        } catch (const std::exception&) {
            throw Error(Errc::SyntaxError, "priority must be an integer", line_no);
        }
        const std::string& action = next("allow|deny|alert").text;
        if (action == "allow") {
            rule.action = Verdict::Allow;
        } else if (action == "deny") {
            rule.action = Verdict::Deny;
        } else if (action == "alert") {
            rule.action = Verdict::Alert;
        } else {
            throw Error(Errc::SyntaxError, "expected allow, deny or alert, got '" + action + "'",
                        line_no);
        }
        if (next("'when'").text != "when") {
            throw Error(Errc::SyntaxError, "expected 'when'", line_no);
        }

        for (;;) {
            RuleCondition cond;
            cond.field = next("field").text;
            if (!kFields.count(cond.field)) {
                throw Error(Errc::UnknownField, "unknown field '" + cond.field + "'", line_no);
            }
            cond.op = parse_op(next("operator").text, line_no);
            const Token& literal = next("quoted literal");
            if (!literal.quoted) {
                throw Error(Errc::SyntaxError, "literal must be double-quoted", line_no);
            }
            cond.literal = literal.text;
            rule.conditions.push_back(std::move(cond));

            if (i >= tokens.size()) break;
            if (next("'and'").text != "and") {
                throw Error(Errc::SyntaxError, "conditions are joined with 'and'", line_no);
            }
        }
        set.rules.push_back(std::move(rule));
    }

    // Descending priority; stable keeps file order inside one priority.
    std::stable_sort(set.rules.begin(), set.rules.end(),
                     [](const CustomRule& a, const CustomRule& b) { return a.priority > b.priority; });
    return set;
}

CustomRuleSet load_policy_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::SyntaxError, "cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_policy_dsl(buf.str());
}

} // namespace hijackguard
