#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <thread>

#include "ceval/errors.hpp"
#include "ceval/provider.hpp"
#include "ceval/util.hpp"

#include "json.hpp"

namespace ceval {

namespace {

// Shared across workers: bounds in-flight requests and paces request starts.
class RequestThrottle {
public:
    RequestThrottle(int max_in_flight, double requests_per_second)
        : max_in_flight_(std::max(1, max_in_flight)), rate_(requests_per_second),
          tokens_(rate_ > 0 ? 1.0 : 0.0), last_refill_(std::chrono::steady_clock::now()) {}

    void acquire() {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [&] { return in_flight_ < max_in_flight_; });
        ++in_flight_;
        if (rate_ <= 0)
            return;
        while (true) {
            refill();
            if (tokens_ >= 1.0) {
                tokens_ -= 1.0;
                return;
            }
            auto wait = std::chrono::duration<double>((1.0 - tokens_) / rate_);
            lock.unlock();
            std::this_thread::sleep_for(wait);
            lock.lock();
        }
    }

    void release() {
        {
            std::lock_guard lock(mutex_);
            --in_flight_;
        }
        cv_.notify_one();
    }

private:
    void refill() {
        auto now = std::chrono::steady_clock::now();
        tokens_ = std::min(std::max(1.0, rate_),
                           tokens_ + std::chrono::duration<double>(now - last_refill_).count() * rate_);
        last_refill_ = now;
    }

    std::mutex mutex_;
    std::condition_variable cv_;
    int max_in_flight_;
    int in_flight_ = 0;
    double rate_;
    double tokens_;
    std::chrono::steady_clock::time_point last_refill_;
};

struct ParsedUrl {
    std::string scheme_host_port; // "http://127.0.0.1:8080"
    std::string path;             // "/v1/chat/completions"
};

ParsedUrl parse_endpoint(const std::string& url) {
    std::size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        raise(errc::manifest_parse, "endpoint is not a URL: " + url);
    std::size_t path_start = url.find('/', scheme_end + 3);
    ParsedUrl parsed;
    if (path_start == std::string::npos) {
        parsed.scheme_host_port = url;
        parsed.path = "/";
    } else {
        parsed.scheme_host_port = url.substr(0, path_start);
        parsed.path = url.substr(path_start);
    }
    return parsed;
}

bool retryable_status(int status) { return status == 429 || (status >= 500 && status < 600); }

// Single OpenAI-compatible chat-completion wire shape; other vendors are a
// matter of endpoint/model configuration.
class HttpChatProvider final : public Provider {
public:
    explicit HttpChatProvider(ProviderConfig config)
        : config_(std::move(config)), url_(parse_endpoint(config_.endpoint)),
          throttle_(config_.max_in_flight, config_.requests_per_second) {
        if (config_.endpoint.empty())
            raise(errc::manifest_parse, "http-chat provider needs an endpoint URL");
    }

    GenerationResult generate(const GenerationRequest& request) override {
        const char* key = nullptr;
        if (!config_.api_key_env.empty()) {
            key = std::getenv(config_.api_key_env.c_str());
            if (!key || !*key)
                raise(errc::credential_missing,
                      "environment variable " + config_.api_key_env + " is not set");
        }

        nlohmann::json body = {
            {"model", config_.model_name},
            {"messages", nlohmann::json::array({nlohmann::json{
                             {"role", "user"}, {"content", request.prompt_text}}})},
            {"temperature", config_.sampling_temperature},
            {"max_tokens", config_.max_output_tokens},
        };
        const std::string payload = body.dump();

        GenerationResult result;
        result.request_digest = request_digest(request.prompt_text, config_.model_name,
                                               request.sample_index, config_.sampling_temperature);

        std::string last_error = "no attempt made";
        int delay_ms = config_.retry.initial_delay_ms;
        int64_t start = now_ms();
        for (int attempt = 0; attempt < std::max(1, config_.retry.max_attempts); ++attempt) {
            if (attempt > 0) {
                std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
                delay_ms = static_cast<int>(delay_ms * config_.retry.factor);
            }

            throttle_.acquire();
            httplib::Result res = post(payload, key);
            throttle_.release();

            if (!res) {
                last_error = "transport error: " + httplib::to_string(res.error());
                continue; // connection-level failures are treated as transient
            }
            if (retryable_status(res->status)) {
                last_error = "HTTP " + std::to_string(res->status) + ": " + res->body;
                continue;
            }
            if (res->status != 200)
                raise(errc::provider_rejected,
                      "HTTP " + std::to_string(res->status) + ": " + res->body);

            result.raw_text = parse_content(res->body);
            result.latency_ms = now_ms() - start;
            return result;
        }
        raise(errc::provider_timeout, "exhausted " + std::to_string(config_.retry.max_attempts) +
                                          " attempts against " + config_.endpoint + "; last: " +
                                          last_error);
    }

    const ProviderConfig& config() const override { return config_; }

private:
    httplib::Result post(const std::string& payload, const char* key) {
        httplib::Client client(url_.scheme_host_port);
        client.set_connection_timeout(std::chrono::milliseconds(config_.request_timeout_ms));
        client.set_read_timeout(std::chrono::milliseconds(config_.request_timeout_ms));
        client.set_write_timeout(std::chrono::milliseconds(config_.request_timeout_ms));
        httplib::Headers headers;
        if (key)
            headers.emplace("Authorization", std::string("Bearer ") + key);
        return client.Post(url_.path, headers, payload, "application/json");
    }

    static std::string parse_content(const std::string& body) {
        nlohmann::json doc = nlohmann::json::parse(body, nullptr, false);
        if (doc.is_discarded())
            raise(errc::provider_rejected, "response is not JSON: " + truncate_lines(body, 512));
        try {
            return doc.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            raise(errc::provider_rejected,
                  std::string("unexpected response shape: ") + e.what() + ": " +
                      truncate_lines(body, 512));
        }
    }

    ProviderConfig config_;
    ParsedUrl url_;
    RequestThrottle throttle_;
};

} // namespace

std::unique_ptr<Provider> make_http_provider(const ProviderConfig& config) {
    return std::make_unique<HttpChatProvider>(config);
}

} // namespace ceval
