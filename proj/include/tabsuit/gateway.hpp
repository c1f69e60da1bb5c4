#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <semaphore>
#include <string>
#include <vector>

#include "tabsuit/errors.hpp"
#include "tabsuit/prompt.hpp"

namespace tabsuit {

struct CompletionRequest {
    std::string model;
    PromptMessages messages;
    double temperature = 0.0;
    int max_tokens = 8;
    int top_logprobs = 20;
};

struct TokenLogprob {
    std::string token;
    double logprob;  // <= 0
};

struct Completion {
    std::string text;
    std::vector<TokenLogprob> first_token_logprobs;  // sorted descending by logprob
    bool from_cache = false;
};

// Canonical JSON form of a request (fixed field order, canonical numbers);
// equal requests serialize identically.
std::string canonical_request_json(const CompletionRequest& request);

// SHA-256 of the canonical serialization, hex-encoded.
std::string cache_key(const CompletionRequest& request);

// Thrown by backends for retryable failures (HTTP 429/5xx).
class TransientBackendError : public Error {
public:
    explicit TransientBackendError(const std::string& message) : Error(Errc::HttpError, message) {}
};

class CompletionBackend {
public:
    virtual ~CompletionBackend() = default;
    virtual Completion complete(const CompletionRequest& request) = 0;
    virtual std::string model_name() const = 0;
};

// Content-addressed on-disk cache: one JSON file per request digest.
// Writes go through a temp file and an atomic rename.
class ResponseCache {
public:
    explicit ResponseCache(std::string dir);

    std::optional<Completion> load(const std::string& digest) const;
    void store(const std::string& digest, const std::string& canonical_request,
               const Completion& completion) const;

    const std::string& dir() const { return dir_; }

private:
    std::string dir_;
};

struct GatewayConfig {
    std::string cache_dir;       // empty disables caching
    int max_in_flight = 8;
    int max_attempts = 5;        // total tries per request
    int backoff_initial_ms = 250;
};

struct GatewayStats {
    std::uint64_t cache_hits = 0;
    std::uint64_t cache_misses = 0;
    std::uint64_t upstream_calls = 0;
};

// Serves completions from the cache when possible; otherwise calls the
// backend under a shared in-flight permit, retrying transient failures with
// exponential backoff, and persists the result.
class LlmGateway {
public:
    LlmGateway(std::unique_ptr<CompletionBackend> backend, GatewayConfig config);

    Completion complete(const CompletionRequest& request);

    std::string model_name() const { return backend_->model_name(); }
    int max_in_flight() const { return config_.max_in_flight; }
    GatewayStats stats() const;

private:
    Completion call_backend(const CompletionRequest& request);

    std::unique_ptr<CompletionBackend> backend_;
    GatewayConfig config_;
    std::optional<ResponseCache> cache_;
    std::counting_semaphore<> permits_;
    std::atomic<std::uint64_t> hits_{0};
    std::atomic<std::uint64_t> misses_{0};
    std::atomic<std::uint64_t> upstream_{0};
};

// Remote chat-completion backend (OpenAI-compatible wire shape).
struct HttpBackendConfig {
    std::string endpoint_url;  // e.g. https://api.example.com/v1/chat/completions
    std::string api_key;
    std::string model;
    int timeout_seconds = 120;
};

class HttpBackend : public CompletionBackend {
public:
    explicit HttpBackend(HttpBackendConfig config);
    Completion complete(const CompletionRequest& request) override;
    std::string model_name() const override { return config_.model; }

private:
    HttpBackendConfig config_;
};

// Wire helpers, exposed for tests.
std::string build_chat_request_body(const CompletionRequest& request);
Completion parse_chat_response_body(const std::string& body);

}  // namespace tabsuit
