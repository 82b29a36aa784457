// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#ifndef HIJACKGUARD_XML_HPP
#define HIJACKGUARD_XML_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hijackguard::xml {

// Minimal strict parser for the manifest/registry dialect: elements,
// double-quoted attributes, text content, comments, and the five standard
// entities. No namespaces, CDATA, processing instructions (beyond an
// optional prolog), or DTDs.
struct Node {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attrs;
    std::vector<Node> children;
    std::string text;   // concatenated character data, trimmed
    int line = 0;

    const std::string* attr(std::string_view key) const;
    bool has_attr(std::string_view key) const { return attr(key) != nullptr; }
};

// Throws Error(Errc::MalformedDocument) with the offending line.
Node parse(std::string_view text);

std::string escape(std::string_view text);

} // namespace hijackguard::xml

#endif
