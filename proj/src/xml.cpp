// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "xml.hpp"

#include <cctype>

#include "hijackguard/errors.hpp"

namespace hijackguard::xml {
namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    int line = 1;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    char next()
    {
        char c = text[pos++];
        if (c == '\n') line++;
        return c;
    }

    bool starts_with(std::string_view s) const { return text.substr(pos, s.size()) == s; }

    void advance(std::size_t n)
    {
        for (std::size_t i = 0; i < n && !eof(); ++i) next();
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw Error(Errc::MalformedDocument, what, line);
    }
};

bool is_name_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'
        || c == ':';
}

void skip_ws(Cursor& c)
{
    while (!c.eof() && std::isspace(static_cast<unsigned char>(c.peek()))) c.next();
}

void skip_misc(Cursor& c)
{
    for (;;) {
        skip_ws(c);
        if (c.starts_with("<!--")) {
            c.advance(4);
            while (!c.eof() && !c.starts_with("-->")) c.next();
            if (c.eof()) c.fail("unterminated comment");
            c.advance(3);
        } else if (c.starts_with("<?")) {
            c.advance(2);
            while (!c.eof() && !c.starts_with("?>")) c.next();
            if (c.eof()) c.fail("unterminated processing instruction");
            c.advance(2);
        } else {
            return;
        }
    }
}

std::string read_name(Cursor& c)
{
    std::string name;
    while (!c.eof() && is_name_char(c.peek())) name.push_back(c.next());
    if (name.empty()) c.fail("expected a name");
    return name;
}

std::string decode_entity(Cursor& c)
{
    std::string ref;
    while (!c.eof() && c.peek() != ';') ref.push_back(c.next());
    if (c.eof()) c.fail("unterminated entity reference");
    c.next();   // ';'
    if (ref == "amp") return "&";
    if (ref == "lt") return "<";
    if (ref == "gt") return ">";
    if (ref == "quot") return "\"";
    if (ref == "apos") return "'";
    c.fail("unknown entity &" + ref + ";");
}

std::string read_attr_value(Cursor& c)
{
    if (c.eof() || c.peek() != '"') c.fail("attribute value must be double-quoted");
    c.next();
    std::string value;
    while (!c.eof() && c.peek() != '"') {
        char ch = c.next();
        if (ch == '&') {
            value += decode_entity(c);
        } else if (ch == '<') {
            c.fail("'<' in attribute value");
        } else {
            value.push_back(ch);
        }
    }
    if (c.eof()) c.fail("unterminated attribute value");
    c.next();
    return value;
}

std::string trim(std::string s)
{
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) b++;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) e--;
    return s.substr(b, e - b);
}

Node parse_element(Cursor& c)
{
    if (c.eof() || c.peek() != '<') c.fail("expected element");
    c.next();
    Node node;
    node.line = c.line;
    node.name = read_name(c);

    for (;;) {
        skip_ws(c);
        if (c.eof()) c.fail("unterminated element <" + node.name + ">");
        if (c.starts_with("/>")) {
            c.advance(2);
            return node;
        }
        if (c.peek() == '>') {
            c.next();
            break;
        }
        std::string key = read_name(c);
        skip_ws(c);
        if (c.eof() || c.peek() != '=') c.fail("expected '=' after attribute " + key);
        c.next();
        skip_ws(c);
        std::string value = read_attr_value(c);
        for (const auto& [k, v] : node.attrs) {
            if (k == key) c.fail("duplicate attribute " + key);
        }
        node.attrs.emplace_back(std::move(key), std::move(value));
    }

    // content
    std::string text;
    for (;;) {
        if (c.eof()) c.fail("missing closing tag for <" + node.name + ">");
        if (c.starts_with("<!--")) {
            c.advance(4);
            while (!c.eof() && !c.starts_with("-->")) c.next();
            if (c.eof()) c.fail("unterminated comment");
            c.advance(3);
            continue;
        }
        if (c.starts_with("</")) {
            c.advance(2);
            std::string closing = read_name(c);
            if (closing != node.name) {
                c.fail("mismatched closing tag </" + closing + "> for <" + node.name + ">");
            }
            skip_ws(c);
            if (c.eof() || c.next() != '>') c.fail("malformed closing tag");
            node.text = trim(std::move(text));
            return node;
        }
        if (c.peek() == '<') {
            node.children.push_back(parse_element(c));
            continue;
        }
        char ch = c.next();
        if (ch == '&') {
            text += decode_entity(c);
        } else {
            text.push_back(ch);
        }
    }
}

} // namespace

const std::string* Node::attr(std::string_view key) const
{
    for (const auto& [k, v] : attrs) {
        if (k == key) return &v;
    }
    return nullptr;
}

Node parse(std::string_view text)
{
    Cursor c{text};
    skip_misc(c);
    if (c.eof()) c.fail("empty document");
    Node root = parse_element(c);
    skip_misc(c);
    if (!c.eof()) c.fail("trailing content after root element");
    return root;
}

std::string escape(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (char ch : text) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(ch);
        }
    }
    return out;
}

} // namespace hijackguard::xml
