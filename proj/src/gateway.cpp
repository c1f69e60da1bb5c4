#include "tabsuit/gateway.hpp"

#include <unistd.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "tabsuit/hash.hpp"

namespace tabsuit {

namespace fs = std::filesystem;

std::string canonical_request_json(const CompletionRequest& request) {
    // nlohmann::json objects keep keys sorted, which fixes the field order.
    nlohmann::json j{
        {"max_tokens", request.max_tokens},
        {"model", request.model},
        {"system", request.messages.system},
        {"temperature", request.temperature},
        {"top_logprobs", request.top_logprobs},
        {"user", request.messages.user},
    };
    return j.dump();
}

std::string cache_key(const CompletionRequest& request) {
    return sha256_hex(canonical_request_json(request));
}

ResponseCache::ResponseCache(std::string dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) raise(Errc::IoFailure, "cannot create cache dir " + dir_ + ": " + ec.message());
}

std::optional<Completion> ResponseCache::load(const std::string& digest) const {
    const fs::path path = fs::path(dir_) / (digest + ".json");
    std::ifstream in(path);
    if (!in) return std::nullopt;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;  // corrupt entry: treat as a miss and rewrite
    }
    Completion c;
    c.text = j.at("text").get<std::string>();
    for (const auto& pair : j.at("first_token_logprobs")) {
        c.first_token_logprobs.push_back({pair.at(0).get<std::string>(), pair.at(1).get<double>()});
    }
    c.from_cache = true;
    return c;
}

void ResponseCache::store(const std::string& digest, const std::string& canonical_request,
                          const Completion& completion) const {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& tl : completion.first_token_logprobs) {
        pairs.push_back(nlohmann::json::array({tl.token, tl.logprob}));
    }
    nlohmann::json j{
        {"request", nlohmann::json::parse(canonical_request)},
        {"text", completion.text},
        {"first_token_logprobs", std::move(pairs)},
    };

    static std::atomic<std::uint64_t> counter{0};
    const fs::path final_path = fs::path(dir_) / (digest + ".json");
    const fs::path tmp_path =
        fs::path(dir_) / (digest + ".tmp" + std::to_string(counter.fetch_add(1)) + "-" +
                          std::to_string(::getpid()));
    {
        std::ofstream out(tmp_path);
        if (!out) raise(Errc::IoFailure, "cannot write cache entry " + tmp_path.string());
        out << j.dump(2) << '\n';
    }
    std::error_code ec;
    fs::rename(tmp_path, final_path, ec);
    if (ec) {
        fs::remove(tmp_path, ec);
        raise(Errc::IoFailure, "cannot finalize cache entry " + final_path.string());
    }
}

LlmGateway::LlmGateway(std::unique_ptr<CompletionBackend> backend, GatewayConfig config)
    : backend_(std::move(backend)),
      config_(std::move(config)),
      permits_(std::max(1, config_.max_in_flight)) {
    if (!config_.cache_dir.empty()) cache_.emplace(config_.cache_dir);
}

GatewayStats LlmGateway::stats() const {
    return GatewayStats{hits_.load(), misses_.load(), upstream_.load()};
}

Completion LlmGateway::call_backend(const CompletionRequest& request) {
    int attempt = 0;
    for (;;) {
        try {
            upstream_.fetch_add(1);
            permits_.acquire();
            struct Release {
                std::counting_semaphore<>* sem;
                ~Release() { sem->release(); }
            } release{&permits_};
            return backend_->complete(request);
        } catch (const TransientBackendError& e) {
            ++attempt;
            if (attempt >= config_.max_attempts) {
                raise(Errc::RateLimitExhausted,
                      "gave up after " + std::to_string(attempt) + " attempts: " + e.what());
            }
            const auto delay = std::chrono::milliseconds(config_.backoff_initial_ms) * (1 << (attempt - 1));
            std::this_thread::sleep_for(delay);
        }
    }
}

Completion LlmGateway::complete(const CompletionRequest& request) {
    if (request.temperature < 0) raise(Errc::InvalidArgument, "temperature must be >= 0");
    const std::string canonical = canonical_request_json(request);
    const std::string digest = sha256_hex(canonical);

    if (cache_) {
        if (auto hit = cache_->load(digest)) {
            hits_.fetch_add(1);
            return *hit;
        }
        misses_.fetch_add(1);
    }
    Completion fresh = call_backend(request);
    fresh.from_cache = false;
    if (cache_) cache_->store(digest, canonical, fresh);
    return fresh;
}

}  // namespace tabsuit
