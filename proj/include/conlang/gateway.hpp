#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>

#include "conlang/cipher.hpp"
#include "conlang/errors.hpp"

namespace conlang {

struct InferenceRequest {
    std::string instance_id;
    std::string model_id;
    std::string system_prompt;
    std::string user_prompt;
    double temperature = 0.05;
    int max_tokens = 1300;
};

struct InferenceResult {
    std::string instance_id;
    std::optional<std::string> completion;
    std::optional<std::string> error;
    int attempt_count = 0;
    double wall_time_s = 0.0;

    bool ok() const { return completion.has_value(); }
};

struct RetryPolicy {
    int max_attempts = 4;
    int initial_backoff_ms = 250;
    double backoff_multiplier = 2.0;
};

struct GatewayConfig {
    std::string base_url;   // e.g. http://localhost:8080
    std::string api_key;
    std::string model_id;
    std::string log_path;   // append-only raw response log (JSONL)
    std::string chat_path = "/v1/chat/completions";
};

inline GatewayConfig gateway_config_from_env() {
    GatewayConfig cfg;
    const char* url = std::getenv("CONLANG_ENDPOINT");
    const char* key = std::getenv("CONLANG_API_KEY");
    const char* model = std::getenv("CONLANG_MODEL");
    if (!url || !*url) throw ConfigurationMissing("CONLANG_ENDPOINT is not set");
    cfg.base_url = url;
    cfg.api_key = key ? key : "";
    if (!model || !*model) throw ConfigurationMissing("CONLANG_MODEL is not set");
    cfg.model_id = model;
    return cfg;
}

inline Json chat_request_body(const InferenceRequest& req, const std::string& default_model) {
    Json body;
    body["model"] = req.model_id.empty() ? default_model : req.model_id;
    body["messages"] = Json::array({Json{{"role", "system"}, {"content", req.system_prompt}},
                                    Json{{"role", "user"}, {"content", req.user_prompt}}});
    body["temperature"] = req.temperature;
    body["max_tokens"] = req.max_tokens;
    return body;
}

// Pulls the assistant text out of a chat-completion response body.
inline std::optional<std::string> completion_from_response(const std::string& body) {
    Json j = Json::parse(body, nullptr, false);
    if (j.is_discarded()) return std::nullopt;
    if (!j.contains("choices") || !j["choices"].is_array() || j["choices"].empty())
        return std::nullopt;
    const auto& msg = j["choices"][0];
    if (!msg.contains("message") || !msg["message"].contains("content") ||
        !msg["message"]["content"].is_string())
        return std::nullopt;
    return msg["message"]["content"].get<std::string>();
}

namespace detail {

// Single-writer append-only raw log. Every response (or final error) is
// persisted before its result is returned to the caller.
class RawLog {
public:
    explicit RawLog(const std::string& path) {
        if (path.empty()) return;
        out_.open(path, std::ios::binary | std::ios::app);
        if (!out_) throw IoFailure("cannot open raw log: " + path);
    }

    void append(const std::string& instance_id, int attempt_count,
                const std::optional<std::string>& body, const std::optional<std::string>& error,
                double wall_time_s) {
        if (!out_.is_open()) return;
        Json rec;
        rec["instance_id"] = instance_id;
        rec["timestamp_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                  std::chrono::system_clock::now().time_since_epoch())
                                  .count();
        rec["attempt_count"] = attempt_count;
        rec["wall_time_s"] = wall_time_s;
        if (body)
            rec["response_body"] = *body;
        else
            rec["response_body"] = nullptr;
        if (error)
            rec["error"] = *error;
        else
            rec["error"] = nullptr;
        std::lock_guard<std::mutex> lock(mu_);
        out_ << rec.dump() << '\n';
        out_.flush();
        if (!out_) throw IoFailure("raw log write failed");
    }

private:
    std::ofstream out_;
    std::mutex mu_;
};

inline bool is_transient_status(int status) {
    return status == 408 || status == 429 || status >= 500;
}

}  // namespace detail

// Runs a batch with at most `parallelism` requests in flight. Every request
// yields exactly one result, in request order; per-request failures never
// abort the batch.
inline std::vector<InferenceResult> run_batch(const GatewayConfig& cfg,
                                              const std::vector<InferenceRequest>& requests,
                                              int parallelism,
                                              const RetryPolicy& policy = {}) {
    if (cfg.base_url.empty()) throw ConfigurationMissing("gateway base URL is not configured");
    if (parallelism < 1) parallelism = 1;

    detail::RawLog log(cfg.log_path);
    std::vector<InferenceResult> results(requests.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        httplib::Client client(cfg.base_url);
        client.set_read_timeout(300, 0);
        httplib::Headers headers;
        if (!cfg.api_key.empty())
            headers.emplace("Authorization", "Bearer " + cfg.api_key);

        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= requests.size()) break;
            const auto& req = requests[i];
            InferenceResult res;
            res.instance_id = req.instance_id;

            const auto started = std::chrono::steady_clock::now();
            const std::string payload = chat_request_body(req, cfg.model_id).dump();
            std::string last_error = "no attempt made";
            std::optional<std::string> body;
            int backoff_ms = policy.initial_backoff_ms;
            for (int attempt = 1; attempt <= policy.max_attempts; ++attempt) {
                res.attempt_count = attempt;
                auto http = client.Post(cfg.chat_path, headers, payload, "application/json");
                if (!http) {
                    last_error = "transport error: " + httplib::to_string(http.error());
                } else if (http->status == 200) {
                    body = http->body;
                    break;
                } else {
                    last_error = "http status " + std::to_string(http->status);
                    if (!detail::is_transient_status(http->status)) break;
                }
                if (attempt < policy.max_attempts) {
                    std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
                    backoff_ms = static_cast<int>(backoff_ms * policy.backoff_multiplier);
                }
            }
            res.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                            started)
                                  .count();
            if (body) {
                auto completion = completion_from_response(*body);
                if (completion)
                    res.completion = std::move(completion);
                else
                    res.error = "unparseable response body";
            } else {
                res.error = last_error;
            }
            log.append(res.instance_id, res.attempt_count, body, res.error, res.wall_time_s);
            results[i] = std::move(res);
        }
    };

    std::vector<std::thread> pool;
    const int n_threads = std::min<std::size_t>(static_cast<std::size_t>(parallelism),
                                                std::max<std::size_t>(requests.size(), 1));
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return results;
}

// Reconstructs results from the raw-response log so completed batches can be
// re-scored without touching the network.
inline std::vector<InferenceResult> replay_log(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open raw log: " + path);
    std::vector<InferenceResult> results;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        Json rec = Json::parse(line, nullptr, false);
        if (rec.is_discarded())
            throw MalformedLog("unparseable raw-log line " + std::to_string(line_no));
        InferenceResult res;
        try {
            res.instance_id = rec.at("instance_id").get<std::string>();
            res.attempt_count = rec.at("attempt_count").get<int>();
            res.wall_time_s = rec.at("wall_time_s").get<double>();
            const auto& body = rec.at("response_body");
            const auto& error = rec.at("error");
            if (!error.is_null()) {
                res.error = error.get<std::string>();
            } else if (!body.is_null()) {
                auto completion = completion_from_response(body.get<std::string>());
                if (completion)
                    res.completion = std::move(completion);
                else
                    res.error = "unparseable response body";
            } else {
                throw MalformedLog("raw-log line " + std::to_string(line_no) +
                                   " has neither body nor error");
            }
        } catch (const Json::exception& e) {
            throw MalformedLog("bad raw-log line " + std::to_string(line_no) + ": " + e.what());
        }
        results.push_back(std::move(res));
    }
    return results;
}

}  // namespace conlang
