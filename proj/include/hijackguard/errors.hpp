// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#ifndef HIJACKGUARD_ERRORS_HPP
#define HIJACKGUARD_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace hijackguard {

enum class Errc {
    // manifest parsing
    MalformedDocument,
    UnknownKind,
    DuplicateComponent,
    MissingPackageName,
    // device state
    DuplicatePackage,
    UnknownPackage,
    UnknownPermission,
    // dispatch
    KindMismatch,
    UnknownBinderFunction,
    UnknownTarget,
    // policy DSL / catalogs
    SyntaxError,
    UnknownField,
    DuplicateRuleId,
    DuplicateSink,
    EmptyCatalog,
    UnknownSink,
};

std::string_view errc_name(Errc code);

// All recoverable input errors carry a code plus, for text inputs, the
// 1-based line the problem was found on (0 when not applicable).
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          code_(code),
          line_(line)
    {
    }

    Errc code() const { return code_; }
    int line() const { return line_; }

private:
    Errc code_;
    int line_;
};

} // namespace hijackguard

#endif
