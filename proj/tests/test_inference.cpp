// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include "coopt/inference.hpp"
#include "coopt/inference_http.hpp"
#include "support/temp_dir.hpp"

using namespace coopt;
using coopt::testing::TempDir;

namespace {

std::vector<ToolSchema> registry() {
    return {
        {"source_agent",
         "rewrite the program at source level",
         {{"guidance", "string", "optimizations to attempt", true}}},
        {"frontend", "lower source to IR", {}},
    };
}

} // namespace

TEST_CASE("transcript starts with the system prompt and stays append-only",
          "[inference]") {
    Transcript t("sys");
    REQUIRE(t.messages().front().role == Role::System);
    t.append(Role::Agent, "hello");
    REQUIRE(t.size() == 2);
    REQUIRE_THROWS_AS(t.append(Role::System, "again"), std::invalid_argument);
    REQUIRE(t.flatten().find("[agent]") != std::string::npos);
}

TEST_CASE("mock provider replays its script in order", "[inference]") {
    MockProvider mock({{"hello", {}, {}}, {"world", {}, {}}});
    Transcript t("sys");
    REQUIRE(mock.complete(t).content == "hello");
    REQUIRE(mock.complete(t).content == "world");
    REQUIRE_THROWS_AS(mock.complete(t), ProviderUnavailable);
}

TEST_CASE("mock provider checks transcript expectations", "[inference]") {
    MockProvider mock({{"ok", {}, {"magic token"}}});
    Transcript t("sys");
    REQUIRE_THROWS_AS(mock.complete(t), std::logic_error);

    MockProvider mock2({{"ok", {}, {"magic token"}}});
    Transcript t2("sys");
    t2.append(Role::Agent, "here is the magic token!");
    REQUIRE(mock2.complete(t2).content == "ok");
}

TEST_CASE("mock determinism: same script, same call order, same bytes",
          "[inference]") {
    auto run_once = [] {
        MockProvider mock({{"a", {}, {}}, {"b", {}, {}}, {"c", {}, {}}});
        Transcript t("sys");
        std::string all;
        for (int i = 0; i < 3; ++i) all += mock.complete(t).content + "|";
        return all;
    };
    REQUIRE(run_once() == run_once());
}

TEST_CASE("mock script files round-trip through the loader", "[inference]") {
    TempDir dir;
    auto path = dir.path() / "script.jsonl";
    {
        std::ofstream out(path);
        out << R"({"content": "plain"})" << "\n\n";
        out << R"({"content": "", "tool": "frontend", "arguments": {}})" << "\n";
        out << R"({"content": "checked", "expect_contains": ["needle"]})" << "\n";
    }
    auto script = MockProvider::load_script(path.string());
    REQUIRE(script.size() == 3);
    REQUIRE(script[0].content == "plain");
    REQUIRE(script[1].native_call->tool_name == "frontend");
    REQUIRE(script[2].expect_contains == std::vector<std::string>{"needle"});
}

TEST_CASE("sample_n returns n messages in issue order", "[inference]") {
    MockProvider mock({{"a", {}, {}}, {"b", {}, {}}});
    Transcript t("sys");
    auto messages = sample_n(mock, t, 2);
    REQUIRE(messages.size() == 2);
    REQUIRE(messages[0].content == "a");
    REQUIRE(messages[1].content == "b");
    REQUIRE(mock.consumed() == 2);
}

TEST_CASE("sample_n with n=1 equals complete", "[inference]") {
    MockProvider a({{"only", {}, {}}});
    MockProvider b({{"only", {}, {}}});
    Transcript t("sys");
    REQUIRE(sample_n(a, t, 1)[0].content == b.complete(t).content);
}

TEST_CASE("sample_n records partial failures and requires one success",
          "[inference]") {
    // script of 1, sampled 3 times: one success, two placeholder failures
    MockProvider mock({{"winner", {}, {}}});
    Transcript t("sys");
    auto messages = sample_n(mock, t, 3);
    REQUIRE(messages.size() == 3);
    REQUIRE(messages[0].content == "winner");
    REQUIRE(is_sample_failure(messages[1]));
    REQUIRE(is_sample_failure(messages[2]));

    MockProvider empty({});
    REQUIRE_THROWS_AS(sample_n(empty, t, 2), SampleFailed);
}

TEST_CASE("parse_tool_invocation accepts a fenced call", "[inference]") {
    Message msg{Role::Model,
                "I'll optimize.\n```json\n"
                R"({"tool":"source_agent","arguments":{"guidance":"unroll loops"}})"
                "\n```",
                {}};
    auto parsed = parse_tool_invocation(msg, registry());
    REQUIRE(std::holds_alternative<ToolInvocation>(parsed));
    const auto& inv = std::get<ToolInvocation>(parsed);
    REQUIRE(inv.tool_name == "source_agent");
    REQUIRE(inv.arguments["guidance"] == "unroll loops");
}

TEST_CASE("parse_tool_invocation accepts the native channel", "[inference]") {
    Message msg{Role::Model, "", NativeToolCall{"frontend", json::object()}};
    auto parsed = parse_tool_invocation(msg, registry());
    REQUIRE(std::holds_alternative<ToolInvocation>(parsed));
}

TEST_CASE("parse_tool_invocation rejects prose, unknown tools, bad args",
          "[inference]") {
    auto reason = [&](const Message& m) {
        auto parsed = parse_tool_invocation(m, registry());
        REQUIRE(std::holds_alternative<MalformedCall>(parsed));
        return std::get<MalformedCall>(parsed).reason;
    };

    REQUIRE(reason({Role::Model, "just prose, no call", {}}) ==
            MalformedCall::Reason::NoCallFound);
    REQUIRE(reason({Role::Model, R"({"tool":"mystery","arguments":{}})", {}}) ==
            MalformedCall::Reason::UnknownTool);
    REQUIRE(reason({Role::Model,
                    R"({"tool":"source_agent","arguments":{}})", {}}) ==
            MalformedCall::Reason::BadArguments); // guidance missing
    REQUIRE(reason({Role::Model,
                    R"({"tool":"source_agent","arguments":{"guidance":7}})",
                    {}}) == MalformedCall::Reason::BadArguments);
    REQUIRE(reason({Role::Model,
                    "```json\n{\"tool\":\"frontend\",\"arguments\":{}}\n```\n"
                    "```json\n{\"tool\":\"frontend\",\"arguments\":{}}\n```",
                    {}}) == MalformedCall::Reason::MultipleCalls);
}

TEST_CASE("render/parse round-trips every well-formed invocation", "[inference]") {
    std::vector<ToolInvocation> cases = {
        {"frontend", json::object()},
        {"source_agent", {{"guidance", "vectorize the loop"}}},
        {"source_agent", {{"guidance", "quotes \" and \\ backslashes\nnewline"}}},
    };
    for (const auto& inv : cases) {
        Message msg{Role::Model, render_tool_invocation(inv), {}};
        auto parsed = parse_tool_invocation(msg, registry());
        REQUIRE(std::holds_alternative<ToolInvocation>(parsed));
        REQUIRE(std::get<ToolInvocation>(parsed) == inv);
    }
}

TEST_CASE("provider config validation", "[inference]") {
    ProviderConfig cfg;
    cfg.endpoint = "mock:/nonexistent";
    REQUIRE_NOTHROW(cfg.validate());
    cfg.request_timeout = 0;
    REQUIRE_THROWS_AS(cfg.validate(), ConfigError);
    cfg.request_timeout = 5;
    cfg.temperature = 3.0;
    REQUIRE_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("http provider completes against a local server", "[inference][http]") {
    httplib::Server server;
    std::atomic<int> hits{0};
    server.Post("/v1/chat/completions",
                [&](const httplib::Request& req, httplib::Response& res) {
                    ++hits;
                    auto body = json::parse(req.body);
                    REQUIRE(body["messages"].size() == 2);
                    REQUIRE(body["messages"][0]["role"] == "system");
                    REQUIRE(body["messages"][1]["role"] == "user");
                    json reply{
                        {"choices",
                         json::array({{{"message",
                                        {{"role", "assistant"},
                                         {"content", "from server"}}}}})}};
                    res.set_content(reply.dump(), "application/json");
                });
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread serve([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    ProviderConfig cfg;
    cfg.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1";
    cfg.retry_limit = 0;
    auto provider = make_provider(cfg);
    Transcript t("system prompt");
    t.append(Role::Agent, "question");
    auto msg = provider->complete(t);
    REQUIRE(msg.content == "from server");
    REQUIRE(hits == 1);

    server.stop();
    serve.join();
}

TEST_CASE("http provider maps native tool calls", "[inference][http]") {
    httplib::Server server;
    server.Post("/v1/chat/completions",
                [&](const httplib::Request&, httplib::Response& res) {
                    json reply{
                        {"choices",
                         json::array(
                             {{{"message",
                                {{"role", "assistant"},
                                 {"content", nullptr},
                                 {"tool_calls",
                                  json::array(
                                      {{{"id", "call_1"},
                                        {"type", "function"},
                                        {"function",
                                         {{"name", "source_agent"},
                                          {"arguments",
                                           R"({"guidance":"inline it"})"}}}}})}}}}})}};
                    res.set_content(reply.dump(), "application/json");
                });
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread serve([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    ProviderConfig cfg;
    cfg.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1";
    cfg.retry_limit = 0;
    HttpProvider provider(cfg);
    Transcript t("sys");
    auto msg = provider.complete(t);
    REQUIRE(msg.native_call.has_value());
    REQUIRE(msg.native_call->tool_name == "source_agent");
    REQUIRE(msg.native_call->arguments["guidance"] == "inline it");

    server.stop();
    serve.join();
}

TEST_CASE("http provider retries then reports unavailability", "[inference][http]") {
    httplib::Server server;
    std::atomic<int> hits{0};
    server.Post("/v1/chat/completions",
                [&](const httplib::Request&, httplib::Response& res) {
                    ++hits;
                    res.status = 500;
                    res.set_content("boom", "text/plain");
                });
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread serve([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    ProviderConfig cfg;
    cfg.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1";
    cfg.retry_limit = 2;
    cfg.retry_backoff_ms = 1;
    HttpProvider provider(cfg);
    Transcript t("sys");
    REQUIRE_THROWS_AS(provider.complete(t), ProviderUnavailable);
    REQUIRE(hits == 3); // initial try + 2 retries

    server.stop();
    serve.join();
}

TEST_CASE("unreachable endpoint raises ProviderUnavailable", "[inference][http]") {
    ProviderConfig cfg;
    cfg.endpoint = "http://127.0.0.1:1/v1"; // port 1: nothing listens
    cfg.retry_limit = 1;
    cfg.retry_backoff_ms = 1;
    HttpProvider provider(cfg);
    Transcript t("sys");
    REQUIRE_THROWS_AS(provider.complete(t), ProviderUnavailable);
}
