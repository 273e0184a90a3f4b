// SPDX-License-Identifier: Apache-2.0
#pragma once

// HTTP chat-completion provider. Separated from inference.hpp so that
// translation units using only the mock provider do not pay for the HTTP
// library.

#ifdef COOPT_ENABLE_TLS
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include "coopt/inference.hpp"

namespace coopt {

class HttpProvider : public Provider {
public:
    explicit HttpProvider(ProviderConfig cfg) : cfg_(std::move(cfg)) {
        std::string endpoint = cfg_.endpoint;
        if (const char* env = ::getenv("PROVIDER_ENDPOINT"); env && *env)
            endpoint = env;
        if (const char* key = ::getenv("PROVIDER_API_KEY"); key && *key)
            api_key_ = key;
        parse_endpoint(endpoint);
    }

    void set_tool_schemas(std::vector<ToolSchema> schemas) override {
        schemas_ = std::move(schemas);
    }

    Message complete(const Transcript& t) override {
        json body = build_request(t);
        std::string last_error = "no attempt made";
        for (int attempt = 0; attempt <= cfg_.retry_limit; ++attempt) {
            if (attempt > 0) {
                auto delay = std::chrono::milliseconds(
                    cfg_.retry_backoff_ms * (1 << std::min(attempt - 1, 6)));
                std::this_thread::sleep_for(delay);
            }
            httplib::Client client(base_url_);
            client.set_connection_timeout(std::chrono::duration<double>(cfg_.request_timeout));
            client.set_read_timeout(std::chrono::duration<double>(cfg_.request_timeout));
            httplib::Headers headers;
            if (!api_key_.empty())
                headers.emplace("Authorization", "Bearer " + api_key_);
            auto res = client.Post(path_ + "/chat/completions", headers,
                                   body.dump(), "application/json");
            if (!res) {
                last_error = "transport error: " + httplib::to_string(res.error());
                continue;
            }
            if (res->status != 200) {
                last_error = "HTTP " + std::to_string(res->status) + ": " +
                             res->body.substr(0, 512);
                continue;
            }
            try {
                return parse_response(res->body);
            } catch (const std::exception& e) {
                last_error = std::string("bad response body: ") + e.what();
            }
        }
        throw ProviderUnavailable("provider unreachable after " +
                                  std::to_string(cfg_.retry_limit + 1) +
                                  " attempt(s); last error: " + last_error);
    }

private:
    void parse_endpoint(const std::string& endpoint) {
        auto scheme_end = endpoint.find("://");
        if (scheme_end == std::string::npos)
            throw ConfigError("provider endpoint must be a URL: " + endpoint);
        std::string scheme = endpoint.substr(0, scheme_end);
#ifndef COOPT_ENABLE_TLS
        if (scheme == "https")
            throw ConfigError("built without TLS support; use an http endpoint "
                              "or a local gateway");
#endif
        auto path_start = endpoint.find('/', scheme_end + 3);
        if (path_start == std::string::npos) {
            base_url_ = endpoint;
            path_ = "";
        } else {
            base_url_ = endpoint.substr(0, path_start);
            path_ = endpoint.substr(path_start);
            while (!path_.empty() && path_.back() == '/') path_.pop_back();
        }
    }

    json build_request(const Transcript& t) const {
        json messages = json::array();
        for (const auto& m : t.messages()) {
            const char* role = "user";
            switch (m.role) {
            case Role::System: role = "system"; break;
            case Role::Model: role = "assistant"; break;
            case Role::Agent:
            case Role::Tool: role = "user"; break;
            }
            messages.push_back({{"role", role}, {"content", m.content}});
        }
        json body{{"model", cfg_.model_id},
                  {"max_tokens", cfg_.max_tokens},
                  {"temperature", cfg_.temperature},
                  {"messages", std::move(messages)}};
        if (!schemas_.empty()) {
            json tools = json::array();
            for (const auto& schema : schemas_) {
                json properties = json::object();
                json required = json::array();
                for (const auto& param : schema.params) {
                    properties[param.name] = {{"type", param.type},
                                              {"description", param.description}};
                    if (param.required) required.push_back(param.name);
                }
                tools.push_back(
                    {{"type", "function"},
                     {"function",
                      {{"name", schema.name},
                       {"description", schema.description},
                       {"parameters",
                        {{"type", "object"},
                         {"properties", std::move(properties)},
                         {"required", std::move(required)}}}}}});
            }
            body["tools"] = std::move(tools);
        }
        return body;
    }

    static Message parse_response(const std::string& body) {
        json parsed = json::parse(body);
        const json& choices = parsed.at("choices");
        if (!choices.is_array() || choices.empty())
            throw std::runtime_error("response has no choices");
        const json& message = choices[0].at("message");
        Message out;
        out.role = Role::Model;
        if (message.contains("content") && message["content"].is_string())
            out.content = message["content"].get<std::string>();
        if (message.contains("tool_calls") && message["tool_calls"].is_array() &&
            message["tool_calls"].size() == 1) {
            const json& call = message["tool_calls"][0];
            const json& fn = call.at("function");
            json args = json::object();
            if (fn.contains("arguments")) {
                if (fn["arguments"].is_string()) {
                    json decoded = json::parse(fn["arguments"].get<std::string>(),
                                               nullptr, false);
                    if (!decoded.is_discarded()) args = std::move(decoded);
                } else {
                    args = fn["arguments"];
                }
            }
            out.native_call = NativeToolCall{fn.at("name").get<std::string>(),
                                             std::move(args)};
        }
        return out;
    }

    ProviderConfig cfg_;
    std::string api_key_;
    std::string base_url_;
    std::string path_;
    std::vector<ToolSchema> schemas_;
};

// Chooses the provider implementation from the endpoint: "mock:<path>"
// loads a reply script, anything else is treated as an HTTP base URL.
// PROVIDER_ENDPOINT overrides the configured endpoint.
inline std::unique_ptr<Provider> make_provider(const ProviderConfig& cfg) {
    cfg.validate();
    std::string endpoint = cfg.endpoint;
    if (const char* env = ::getenv("PROVIDER_ENDPOINT"); env && *env)
        endpoint = env;
    if (endpoint.rfind("mock:", 0) == 0)
        return std::make_unique<MockProvider>(
            MockProvider::load_script(endpoint.substr(5)));
    return std::make_unique<HttpProvider>(cfg);
}

} // namespace coopt
