// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "beatline/gateway/backend.hpp"

#include <chrono>
#include <memory>
#include <string>

namespace beatline::gateway {

struct HttpBackendConfig {
    /// Everything before "/chat/completions", e.g. "https://api.openai.com/v1".
    std::string base_url = "https://api.openai.com/v1";
    std::string model = "gpt-4";
    /// Environment variable holding the bearer token. Empty means no auth
    /// header (local OpenAI-compatible servers).
    std::string api_key_env = "OPENAI_API_KEY";
    /// Whole-call budget, retries included.
    std::chrono::milliseconds deadline{20000};
    /// Base delay before the single retry; jittered by +/-50%.
    std::chrono::milliseconds retry_backoff{200};
    double temperature = 0.7;
    int max_tokens = 400;
};

class ConfigurationError : public BackendError {
  public:
    using BackendError::BackendError;
};

/// Chat-completion request body for a narrator envelope. Directives go in the
/// system message; history turns become alternating user/assistant messages,
/// with each user turn annotated with its sentiment score.
[[nodiscard]] std::string build_chat_request(const PromptEnvelope& envelope, const HttpBackendConfig& config);

/// Chat-completion request body asking for a RETURN / CONTINUE decision.
[[nodiscard]] std::string build_supervisor_request(std::span<const ConversationTurn> history,
                                                   std::string_view last_user_turn, const HttpBackendConfig& config);

struct ChatReply {
    std::string text;
    bool truncated = false;
};

/// Reads choices[0].message.content. finish_reason "content_filter" is a
/// refusal; a missing or empty content is a MalformedResponse.
[[nodiscard]] ChatReply parse_chat_response(std::string_view body);

/// "RETURN" or "CONTINUE" (first one found, any case). Throws MalformedResponse.
[[nodiscard]] SupervisorVerdict parse_supervisor_reply(std::string_view text);

/// OpenAI-compatible HTTP backend. One retry with jittered backoff on transport
/// errors, 5xx, 408 and 429; no retry on other 4xx or content filtering. Every
/// call returns or throws BackendTimeout within the configured deadline.
class HttpBackend final : public GenerationBackend {
  public:
    /// Throws ConfigurationError for a bad URL or a named-but-unset credential.
    explicit HttpBackend(HttpBackendConfig config);
    ~HttpBackend() override;
    HttpBackend(const HttpBackend&) = delete;
    HttpBackend& operator=(const HttpBackend&) = delete;

    [[nodiscard]] std::string_view id() const noexcept override { return id_; }
    [[nodiscard]] GenerationResult generate(const PromptEnvelope& envelope) override;
    [[nodiscard]] SupervisorVerdict supervise(std::span<const ConversationTurn> history,
                                              std::string_view last_user_turn) override;

  private:
    struct Response {
        int status = 0;
        std::string body;
    };
    [[nodiscard]] Response post_with_retry(const std::string& body);

    HttpBackendConfig config_;
    std::string origin_;  // scheme://host[:port]
    std::string path_;    // base path + /chat/completions
    std::string api_key_;
    std::string id_;
};

} // namespace beatline::gateway
