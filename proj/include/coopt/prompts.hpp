// SPDX-License-Identifier: Apache-2.0
#pragma once

// All prompt templates live here, versioned as one unit so traces can record
// which prompt set produced them.

#include <map>
#include <stdexcept>
#include <string>

namespace coopt::prompts {

inline constexpr const char* kPromptVersion = "1";

// ---------------------------------------------------------------------------
// Level names and descriptions. Level-agent prompts differ across levels only
// by these two substitutions.

inline const std::string& level_description(const std::string& level_name) {
    static const std::map<std::string, std::string> descriptions{
        {"source",
         "This level is C source code. The program text must compile as a "
         "standalone C program with the local C compiler."},
        {"ir",
         "This level is LLVM IR in textual form. The program text must be "
         "valid LLVM assembly (.ll) for the local LLVM version."},
        {"assembly",
         "This level is x86-64 assembly in the syntax produced by the local "
         "compiler backend. The program text must assemble and link as a "
         "standalone program."},
    };
    auto it = descriptions.find(level_name);
    if (it == descriptions.end())
        throw std::invalid_argument("no description for level: " + level_name);
    return it->second;
}

// ---------------------------------------------------------------------------
// Level-specific optimization agent

inline constexpr const char* kLevelAgentSystemTemplate =
    R"(You are an expert performance engineer optimizing one program at the {level_name} level.
{level_description}

Rewrite the program you are given into a faster program at the same level.
Requirements:
- the rewrite must read the same input and produce byte-identical output for every valid input
- reply with the complete rewritten program in exactly one fenced code block and no other code blocks
- prefer transformations with large asymptotic or constant-factor wins
- keep the program self-contained)";

inline std::string level_agent_system(const std::string& level_name) {
    std::string text = kLevelAgentSystemTemplate;
    auto substitute = [&](const std::string& key, const std::string& value) {
        std::size_t pos;
        while ((pos = text.find(key)) != std::string::npos)
            text.replace(pos, key.size(), value);
    };
    substitute("{level_name}", level_name);
    substitute("{level_description}", level_description(level_name));
    return text;
}

// ---------------------------------------------------------------------------
// Test-script generation

inline constexpr const char* kTestScriptSystem =
    R"(You write test-input generator scripts for command-line programs that read from standard input.

Reply with one Python 3 script in a fenced code block. The script contract:
- invoked as: python3 script.py <class> <i>, where <class> is "explore" or "scale" and <i> is a positive integer
- writes exactly one test input for the program under test to standard output, then exits 0
- deterministic: identical arguments always produce identical bytes
- "explore" inputs probe correctness; cover edge cases and use <i> to select among them
- "scale" inputs drive performance measurement: their size must grow with <i> and must not shrink as <i> grows; when <i> grows by an order of magnitude, input size should grow by roughly an order of magnitude
- every generated input must be valid for the program under test
- use only the Python standard library; seed any randomness from <i>)";

inline std::string test_script_request(const std::string& program_text) {
    return "The program under test:\n```c\n" + program_text +
           "\n```\nWrite the input-generator script.";
}

// ---------------------------------------------------------------------------
// Guiding agent

inline constexpr const char* kGuidingSystemTemplate =
    R"(You orchestrate the optimization of one program by calling tools, one per reply.

Compiler components (free, unlimited):
- frontend: lowers the current source program to IR
- middle_end: optimizes the current IR program (IR to IR)
- backend: lowers the current IR program to assembly

Optimization agents (cost: 1 budget unit per call):
- source_agent: rewrites the current source program for speed
- ir_agent: rewrites the current IR program for speed
- assembly_agent: rewrites the current assembly program for speed
Each agent takes {"guidance": "<free-text description of optimizations to attempt>"}.

You have a budget of {budget} agent call(s); the remaining budget is shown after
every call. Compiler components are free but make progress only when combined
with agent calls, so spend the budget where improvement is likeliest. Repeated
calls and backtracking are allowed: each tool operates on the best program seen
so far at its input level.

Reply with exactly one tool call as a fenced JSON block:
```json
{"tool": "<name>", "arguments": {...}}
```
When nothing more can be gained, reply with {"tool": "finish", "arguments": {"reason": "<why>"}}.)";

inline std::string guiding_system(int budget) {
    std::string text = kGuidingSystemTemplate;
    std::string key = "{budget}";
    if (auto pos = text.find(key); pos != std::string::npos)
        text.replace(pos, key.size(), std::to_string(budget));
    return text;
}

} // namespace coopt::prompts
