// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#ifndef HIJACKGUARD_TRACE_HPP
#define HIJACKGUARD_TRACE_HPP

#include <cstdint>
#include <string>

#include "hijackguard/dispatch.hpp"

namespace hijackguard {

// One dispatched request, fully serialized. Records are emitted as one JSON
// object per line with a fixed key order, so two runs of the same scripted
// scenario produce byte-identical traces.
struct TraceRecord {
    int step = 0;
    std::int64_t clock = 0;
    DispatchResult result;

    std::string to_json_line() const;
};

} // namespace hijackguard

#endif
