#include <algorithm>

#include <nlohmann/json.hpp>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "tabsuit/gateway.hpp"

namespace tabsuit {

namespace {

struct SplitUrl {
    std::string base;  // scheme://host[:port]
    std::string path;
};

SplitUrl split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) raise(Errc::ConfigError, "endpoint URL needs a scheme: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

std::string build_chat_request_body(const CompletionRequest& request) {
    nlohmann::json body{
        {"model", request.model},
        {"messages",
         nlohmann::json::array({
             nlohmann::json{{"role", "system"}, {"content", request.messages.system}},
             nlohmann::json{{"role", "user"}, {"content", request.messages.user}},
         })},
        {"temperature", request.temperature},
        {"max_tokens", request.max_tokens},
        {"logprobs", true},
        {"top_logprobs", request.top_logprobs},
    };
    return body.dump();
}

Completion parse_chat_response_body(const std::string& body) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
        raise(Errc::MalformedResponse, std::string("response is not JSON: ") + e.what());
    }
    if (!j.contains("choices") || !j["choices"].is_array() || j["choices"].empty()) {
        raise(Errc::MalformedResponse, "response has no choices");
    }
    const auto& choice = j["choices"][0];
    if (!choice.contains("message") || !choice["message"].contains("content")) {
        raise(Errc::MalformedResponse, "choice has no message content");
    }

    Completion c;
    c.text = choice["message"]["content"].is_null() ? "" : choice["message"]["content"].get<std::string>();

    if (!choice.contains("logprobs") || choice["logprobs"].is_null() ||
        !choice["logprobs"].contains("content") || choice["logprobs"]["content"].empty()) {
        raise(Errc::MalformedResponse, "response lacks token logprobs");
    }
    const auto& first = choice["logprobs"]["content"][0];
    if (!first.contains("top_logprobs")) raise(Errc::MalformedResponse, "first token lacks top_logprobs");
    for (const auto& alt : first["top_logprobs"]) {
        TokenLogprob tl;
        tl.token = alt.at("token").get<std::string>();
        tl.logprob = std::min(0.0, alt.at("logprob").get<double>());
        c.first_token_logprobs.push_back(std::move(tl));
    }
    std::stable_sort(c.first_token_logprobs.begin(), c.first_token_logprobs.end(),
                     [](const TokenLogprob& a, const TokenLogprob& b) { return a.logprob > b.logprob; });
    return c;
}

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
    if (config_.endpoint_url.empty()) raise(Errc::ConfigError, "remote backend needs an endpoint URL");
    if (config_.api_key.empty()) raise(Errc::AuthError, "remote backend needs an API key");
}

Completion HttpBackend::complete(const CompletionRequest& request) {
    const SplitUrl url = split_url(config_.endpoint_url);
    httplib::Client client(url.base);
    client.set_read_timeout(config_.timeout_seconds, 0);
    client.set_connection_timeout(config_.timeout_seconds, 0);
    client.set_bearer_token_auth(config_.api_key);

    auto res = client.Post(url.path, build_chat_request_body(request), "application/json");
    if (!res) {
        throw TransientBackendError("no response from endpoint: " + httplib::to_string(res.error()));
    }
    if (res->status == 401 || res->status == 403) {
        raise(Errc::AuthError, "endpoint rejected credentials (HTTP " + std::to_string(res->status) + ")");
    }
    if (res->status == 429 || res->status >= 500) {
        throw TransientBackendError("HTTP " + std::to_string(res->status));
    }
    if (res->status != 200) {
        raise(Errc::HttpError, "HTTP " + std::to_string(res->status) + ": " + res->body);
    }
    return parse_chat_response_body(res->body);
}

}  // namespace tabsuit
