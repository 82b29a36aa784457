// Copyright 2026 the hijackguard contributors. Licensed under the
// Apache License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#ifndef HIJACKGUARD_SCENARIO_HPP
#define HIJACKGUARD_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hijackguard/engine.hpp"
#include "hijackguard/spac.hpp"

namespace hijackguard {

// Scenario script directives, one per line:
//   install <file>
//   uninstall <pkg>
//   call <caller> <api> <pkg/component> [key=value ...]
//   broadcast <caller> [action=<a>] [component=<pkg/name>] [key=value ...]
//   decide <allow|deny|remember-allow|remember-deny>
//   advance <ms>
//   expect <allow|deny|alert> [policy=<id>]
//   expect-effect <none|data|crash|sink-denied>
//
// call reserves the keys action=, uri=, params= (comma-split), binder= and
// flags= (comma-split, SINGLE_TOP); every other key=value becomes an extra,
// with the literal value `null` denoting an extra that is present but null.
// Tokens may be double-quoted to include spaces. '#' starts a comment.
//
// expect directives bind to the most recent call/broadcast and check the
// final request of its relay chain (for multi-receiver broadcasts, the last
// delivery in install order). decide lines queue for the next alert.

struct DirInstall { std::string file; };
struct DirUninstall { std::string package; };
struct DirCall { IpcRequest request; };                     // also explicit broadcast
struct DirDecide { ProviderVerdict verdict; };
struct DirAdvance { std::int64_t delta_ms = 0; };
struct DirExpect { Verdict verdict; std::optional<std::string> policy; };
enum class EffectExpectation { None, Data, Crash, SinkDenied };
struct DirExpectEffect { EffectExpectation expectation; };

using Directive = std::variant<DirInstall, DirUninstall, DirCall, DirDecide, DirAdvance,
                               DirExpect, DirExpectEffect>;

struct ScenarioStep {
    int line = 0;
    Directive directive;
};

struct ScenarioScript {
    std::vector<ScenarioStep> steps;
};

ScenarioScript parse_scenario(const std::string& text);
ScenarioScript load_scenario_file(const std::string& path);

struct ScenarioOutcome {
    // 0 = all expectations matched, 1 = first mismatch reported, 2 = input error.
    int exit_code = 0;
    std::string message;      // first mismatch or error description
    int failed_line = 0;      // scenario line of the first mismatch
};

// Executes a parsed scenario against an engine. Manifests named by install
// directives resolve against apps_dir. In scripted mode decide directives
// feed the provided queue; when scripted is null they are skipped (a real
// decision provider, e.g. an interactive prompt, answers instead).
class ScenarioRunner {
public:
    ScenarioRunner(Engine& engine, std::filesystem::path apps_dir,
                   std::shared_ptr<ScriptedDecisionProvider> scripted);

    ScenarioOutcome run(const ScenarioScript& script);

private:
    ScenarioOutcome mismatch(const ScenarioStep& step, const std::string& what);

    Engine& engine_;
    std::filesystem::path apps_dir_;
    std::shared_ptr<ScriptedDecisionProvider> scripted_;
    std::vector<DispatchResult> last_results_;
    bool have_dispatch_ = false;
};

// Serializes the engine trace as one JSON record per line.
void write_trace(const Engine& engine, std::ostream& os);

} // namespace hijackguard

#endif
