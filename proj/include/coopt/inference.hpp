// SPDX-License-Identifier: Apache-2.0
#pragma once

// Chat-completion abstraction: transcripts, tool-call parsing, n-way
// sampling, a scripted mock provider for deterministic tests, and a generic
// HTTP provider.

#include <chrono>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <json.hpp>

#include "coopt/errors.hpp"

namespace coopt {

using json = nlohmann::json;

enum class Role { System, Agent, Tool, Model };

inline const char* role_name(Role role) {
    switch (role) {
    case Role::System: return "system";
    case Role::Agent: return "agent";
    case Role::Tool: return "tool";
    case Role::Model: return "model";
    }
    return "?";
}

// A structured call carried on the provider's native tool-call channel.
struct NativeToolCall {
    std::string tool_name;
    json arguments;
};

struct Message {
    Role role = Role::Model;
    std::string content;
    std::optional<NativeToolCall> native_call;
};

// Append-only conversation. The first message is always the system prompt.
class Transcript {
public:
    explicit Transcript(std::string system_prompt) {
        messages_.push_back({Role::System, std::move(system_prompt), std::nullopt});
    }

    void append(Message m) {
        if (m.role == Role::System)
            throw std::invalid_argument("Transcript: only the first message may be System");
        messages_.push_back(std::move(m));
    }
    void append(Role role, std::string content) {
        append({role, std::move(content), std::nullopt});
    }

    const std::vector<Message>& messages() const { return messages_; }
    std::size_t size() const { return messages_.size(); }

    std::string flatten() const {
        std::string out;
        for (const auto& m : messages_) {
            out += "[";
            out += role_name(m.role);
            out += "]\n";
            out += m.content;
            out += "\n";
        }
        return out;
    }

private:
    std::vector<Message> messages_;
};

// ---------------------------------------------------------------------------
// Tool schemas and invocation parsing

struct ToolParam {
    std::string name;
    std::string type = "string"; // string | integer | number | boolean
    std::string description;
    bool required = true;
};

struct ToolSchema {
    std::string name;
    std::string description;
    std::vector<ToolParam> params;
};

struct ToolInvocation {
    std::string tool_name;
    json arguments = json::object();

    friend bool operator==(const ToolInvocation& a, const ToolInvocation& b) {
        return a.tool_name == b.tool_name && a.arguments == b.arguments;
    }
};

struct MalformedCall {
    enum class Reason { NoCallFound, UnknownTool, BadArguments, MultipleCalls };
    Reason reason;
    std::string detail;
};

inline const char* to_string(MalformedCall::Reason r) {
    switch (r) {
    case MalformedCall::Reason::NoCallFound: return "no call found";
    case MalformedCall::Reason::UnknownTool: return "unknown tool";
    case MalformedCall::Reason::BadArguments: return "bad arguments";
    case MalformedCall::Reason::MultipleCalls: return "multiple calls";
    }
    return "?";
}

// Canonical textual form of an invocation: a fenced JSON block.
inline std::string render_tool_invocation(const ToolInvocation& inv) {
    json body{{"tool", inv.tool_name}, {"arguments", inv.arguments}};
    return "```json\n" + body.dump() + "\n```";
}

namespace detail {

inline bool json_type_matches(const json& value, const std::string& type) {
    if (type == "string") return value.is_string();
    if (type == "integer") return value.is_number_integer();
    if (type == "number") return value.is_number();
    if (type == "boolean") return value.is_boolean();
    return true;
}

inline std::optional<MalformedCall> check_arguments(const ToolSchema& schema,
                                                    const json& args) {
    if (!args.is_object())
        return MalformedCall{MalformedCall::Reason::BadArguments,
                             "arguments must be an object"};
    for (const auto& param : schema.params) {
        auto it = args.find(param.name);
        if (it == args.end()) {
            if (param.required)
                return MalformedCall{MalformedCall::Reason::BadArguments,
                                     "missing required argument '" + param.name + "'"};
            continue;
        }
        if (!json_type_matches(*it, param.type))
            return MalformedCall{MalformedCall::Reason::BadArguments,
                                 "argument '" + param.name + "' must be of type " +
                                     param.type};
    }
    for (auto it = args.begin(); it != args.end(); ++it) {
        bool known = false;
        for (const auto& param : schema.params)
            if (param.name == it.key()) known = true;
        if (!known)
            return MalformedCall{MalformedCall::Reason::BadArguments,
                                 "unexpected argument '" + it.key() + "'"};
    }
    return std::nullopt;
}

// Extracts every JSON object in the text that looks like a tool call:
// fenced ``` blocks first, then the whole body as a fallback.
inline std::vector<json> candidate_calls(const std::string& text) {
    std::vector<json> found;
    auto consider = [&](const std::string& chunk) {
        json parsed = json::parse(chunk, nullptr, false);
        if (parsed.is_discarded() || !parsed.is_object()) return;
        if (parsed.contains("tool")) found.push_back(std::move(parsed));
    };

    std::size_t pos = 0;
    while ((pos = text.find("```", pos)) != std::string::npos) {
        std::size_t body_start = text.find('\n', pos);
        if (body_start == std::string::npos) break;
        std::size_t fence_end = text.find("```", body_start);
        if (fence_end == std::string::npos) break;
        consider(text.substr(body_start + 1, fence_end - body_start - 1));
        pos = fence_end + 3;
    }
    if (found.empty()) consider(text);
    return found;
}

} // namespace detail

// Turns a model message into a structured invocation, or explains why it
// could not. The native channel takes precedence over fenced-block text.
inline std::variant<ToolInvocation, MalformedCall>
parse_tool_invocation(const Message& msg, const std::vector<ToolSchema>& registry) {
    auto resolve = [&](const std::string& name,
                       const json& args) -> std::variant<ToolInvocation, MalformedCall> {
        const ToolSchema* schema = nullptr;
        for (const auto& s : registry)
            if (s.name == name) schema = &s;
        if (!schema)
            return MalformedCall{MalformedCall::Reason::UnknownTool,
                                 "tool '" + name + "' is not registered"};
        if (auto bad = detail::check_arguments(*schema, args)) return *bad;
        return ToolInvocation{name, args};
    };

    if (msg.native_call)
        return resolve(msg.native_call->tool_name, msg.native_call->arguments);

    auto candidates = detail::candidate_calls(msg.content);
    if (candidates.empty())
        return MalformedCall{MalformedCall::Reason::NoCallFound,
                             "message contains no tool call"};
    if (candidates.size() > 1)
        return MalformedCall{MalformedCall::Reason::MultipleCalls,
                             "message contains " + std::to_string(candidates.size()) +
                                 " tool calls"};
    const json& call = candidates.front();
    if (!call["tool"].is_string())
        return MalformedCall{MalformedCall::Reason::NoCallFound,
                             "tool name is not a string"};
    json args = call.contains("arguments") ? call["arguments"] : json::object();
    return resolve(call["tool"].get<std::string>(), args);
}

// ---------------------------------------------------------------------------
// Providers

struct ProviderConfig {
    std::string endpoint;           // URL, or "mock:<script-path>"
    std::string model_id = "default";
    int max_tokens = 8192;
    double temperature = 0.2;
    double request_timeout = 120.0; // seconds
    int retry_limit = 2;
    int retry_backoff_ms = 250;

    void validate() const {
        if (request_timeout <= 0)
            throw ConfigError("provider: request_timeout must be > 0");
        if (max_tokens <= 0)
            throw ConfigError("provider: max_tokens must be > 0");
        if (temperature < 0 || temperature > 2)
            throw ConfigError("provider: temperature must be in [0,2]");
        if (retry_limit < 0)
            throw ConfigError("provider: retry_limit must be >= 0");
    }
};

class Provider {
public:
    virtual ~Provider() = default;

    // One inference call. The transcript is never mutated; callers append.
    virtual Message complete(const Transcript& t) = 0;

    // Providers that speak a native tool channel may forward these.
    virtual void set_tool_schemas(std::vector<ToolSchema>) {}
};

// Scripted provider: replays canned replies in order. Consumption is
// serialized, so a fixed script and call order give byte-identical runs.
class MockProvider : public Provider {
public:
    struct Reply {
        std::string content;
        std::optional<NativeToolCall> native_call;
        std::vector<std::string> expect_contains;
    };

    explicit MockProvider(std::vector<Reply> script) : script_(std::move(script)) {}
    MockProvider(std::initializer_list<Reply> script) : script_(script) {}

    // Line-delimited JSON records:
    //   {"content": "...", "tool": "name", "arguments": {...},
    //    "expect_contains": ["..."]}
    // "tool"/"arguments" and "expect_contains" are optional.
    static std::vector<Reply> load_script(const std::string& path) {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("mock provider: cannot open script file: " + path);
        std::vector<Reply> script;
        std::string line;
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            json rec = json::parse(line);
            Reply reply;
            reply.content = rec.value("content", "");
            if (rec.contains("tool"))
                reply.native_call = NativeToolCall{
                    rec["tool"].get<std::string>(),
                    rec.contains("arguments") ? rec["arguments"] : json::object()};
            if (rec.contains("expect_contains"))
                for (const auto& needle : rec["expect_contains"])
                    reply.expect_contains.push_back(needle.get<std::string>());
            script.push_back(std::move(reply));
        }
        return script;
    }

    Message complete(const Transcript& t) override {
        std::lock_guard lock(mutex_);
        if (index_ >= script_.size())
            throw ProviderUnavailable("mock provider: script exhausted after " +
                                      std::to_string(script_.size()) + " replies");
        const Reply& reply = script_[index_++];
        if (!reply.expect_contains.empty()) {
            std::string flat = t.flatten();
            for (const auto& needle : reply.expect_contains)
                if (flat.find(needle) == std::string::npos)
                    throw std::logic_error(
                        "mock provider: transcript for reply #" +
                        std::to_string(index_) + " does not contain \"" + needle +
                        "\"");
        }
        return {Role::Model, reply.content, reply.native_call};
    }

    std::size_t consumed() const {
        std::lock_guard lock(mutex_);
        return index_;
    }
    std::size_t remaining() const {
        std::lock_guard lock(mutex_);
        return script_.size() - index_;
    }

private:
    mutable std::mutex mutex_;
    std::vector<Reply> script_;
    std::size_t index_ = 0;
};

// Issues n calls against the same transcript snapshot. Failed calls become
// placeholder messages; if every call fails, SampleFailed is thrown.
inline constexpr const char* kSampleFailurePrefix = "[sample failed]";

inline std::vector<Message> sample_n(Provider& provider, const Transcript& t,
                                     int n) {
    if (n < 1)
        throw std::invalid_argument("sample_n: n must be >= 1");
    std::vector<Message> out;
    int successes = 0;
    std::string last_error;
    for (int i = 0; i < n; ++i) {
        try {
            out.push_back(provider.complete(t));
            ++successes;
        } catch (const ProviderUnavailable& e) {
            last_error = e.what();
            out.push_back({Role::Model,
                           std::string(kSampleFailurePrefix) + " " + e.what(),
                           std::nullopt});
        }
    }
    if (successes == 0)
        throw SampleFailed("sample_n: all " + std::to_string(n) +
                           " calls failed; last error: " + last_error);
    return out;
}

inline bool is_sample_failure(const Message& msg) {
    return msg.content.rfind(kSampleFailurePrefix, 0) == 0;
}

} // namespace coopt
