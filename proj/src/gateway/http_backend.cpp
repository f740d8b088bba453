// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/gateway/http_backend.hpp"

#include "beatline/story/text.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <random>
#include <thread>

namespace beatline::gateway {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;
using orchestrator::PromptPurpose;
using orchestrator::Speaker;

namespace {

// The supervisor wording is our own; tune it against the target model.
constexpr std::string_view kSupervisorInstruction =
    "You supervise a conversation between an AI story narrator and a listener. The story is paused while the "
    "narrator checks in with the listener. Read the conversation and the listener's most recent reply, then decide "
    "whether the narrator should return to the story now or keep the conversation going for another turn. Prefer "
    "returning to the story unless the listener asked something, raised a concern, or did not answer. Reply with "
    "exactly one word: RETURN or CONTINUE.";

void push_message(json& messages, std::string_view role, const std::string& content) {
    if (!messages.empty() && messages.back()["role"] == role && role != "system") {
        messages.back()["content"] = messages.back()["content"].get<std::string>() + "\n" + content;
        return;
    }
    messages.push_back({{"role", role}, {"content", content}});
}

std::string user_content(const ConversationTurn& turn) {
    if (!turn.sentiment) {
        return turn.text;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%+.4f", *turn.sentiment);
    return "[sentiment " + std::string(buf) + "] " + turn.text;
}

void append_history(json& messages, std::span<const ConversationTurn> history) {
    for (const auto& turn : history) {
        switch (turn.speaker) {
        case Speaker::Narrator: push_message(messages, "assistant", turn.text); break;
        case Speaker::User: push_message(messages, "user", user_content(turn)); break;
        case Speaker::System: break;
        }
    }
}

json base_request(const HttpBackendConfig& config, json messages) {
    return json{{"model", config.model},
                {"messages", std::move(messages)},
                {"temperature", config.temperature},
                {"max_tokens", config.max_tokens}};
}

bool transient_status(int status) { return status >= 500 || status == 408 || status == 429; }

} // namespace

std::string build_chat_request(const PromptEnvelope& env, const HttpBackendConfig& config) {
    std::string system;
    for (const auto& d : env.directives) {
        if (!system.empty()) system += '\n';
        system += d;
    }
    if (env.expected_emotion) {
        system += "\nExpected emotion for this segment: " + std::string(story::name(*env.expected_emotion)) + ".";
    }

    json messages = json::array();
    push_message(messages, "system", system);
    append_history(messages, env.history_window);

    std::string request;
    switch (env.purpose) {
    case PromptPurpose::Narration: request = "Source segment:\n" + env.source_segment.value_or(""); break;
    case PromptPurpose::Intervention:
        request = "(The story is paused. Speak to the listener as instructed.)";
        if (env.source_segment) request += "\nMost recent segment:\n" + *env.source_segment;
        break;
    case PromptPurpose::FollowUp: request = "(Reply to the listener as instructed.)"; break;
    }
    push_message(messages, "user", request);
    return base_request(config, std::move(messages)).dump();
}

std::string build_supervisor_request(std::span<const ConversationTurn> history, std::string_view last_user_turn,
                                     const HttpBackendConfig& config) {
    std::string transcript;
    for (const auto& turn : history) {
        transcript += std::string(orchestrator::name(turn.speaker)) + ": " + user_content(turn) + "\n";
    }
    json messages = json::array();
    messages.push_back({{"role", "system"}, {"content", std::string(kSupervisorInstruction)}});
    messages.push_back({{"role", "user"},
                        {"content", "Conversation so far:\n" + transcript + "\nMost recent listener reply: \"" +
                                        std::string(last_user_turn) + "\"\nAnswer RETURN or CONTINUE."}});
    auto req = base_request(config, std::move(messages));
    req["temperature"] = 0.0;
    req["max_tokens"] = 5;
    return req.dump();
}

ChatReply parse_chat_response(std::string_view body) {
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::parse_error& e) {
        throw MalformedResponse(std::string("response is not JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("choices") || !doc["choices"].is_array() || doc["choices"].empty()) {
        throw MalformedResponse("response has no choices");
    }
    const auto& choice = doc["choices"][0];
    const std::string finish =
        choice.contains("finish_reason") && choice["finish_reason"].is_string() ? choice["finish_reason"].get<std::string>()
                                                                              : "";
    if (finish == "content_filter") {
        throw BackendRefusal("generation blocked by content filter");
    }
    if (!choice.contains("message") || !choice["message"].is_object() || !choice["message"].contains("content") ||
        !choice["message"]["content"].is_string()) {
        throw MalformedResponse("choice has no message content");
    }
    ChatReply reply{choice["message"]["content"].get<std::string>(), finish == "length"};
    if (story::trim(reply.text).empty()) {
        throw MalformedResponse("message content is empty");
    }
    return reply;
}

SupervisorVerdict parse_supervisor_reply(std::string_view text) {
    const auto lower = story::to_lower(text);
    const auto ret = lower.find("return");
    const auto cont = lower.find("continue");
    if (ret == std::string::npos && cont == std::string::npos) {
        throw MalformedResponse("supervisor reply is neither RETURN nor CONTINUE: '" + std::string(text) + "'");
    }
    if (cont == std::string::npos || (ret != std::string::npos && ret < cont)) {
        return {SupervisorVerdict::Kind::ReturnToStory, std::string(story::trim(text))};
    }
    return {SupervisorVerdict::Kind::ContinueConversation, std::string(story::trim(text))};
}

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
    const auto scheme_end = config_.base_url.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigurationError("base_url must look like scheme://host[:port][/path]: '" + config_.base_url + "'");
    }
    const auto scheme = config_.base_url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") {
        throw ConfigurationError("unsupported URL scheme '" + scheme + "'");
    }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (scheme == "https") {
        throw ConfigurationError("this build has no TLS support; use an http:// endpoint");
    }
#endif
    const auto path_start = config_.base_url.find('/', scheme_end + 3);
    origin_ = config_.base_url.substr(0, path_start);
    std::string base_path = path_start == std::string::npos ? "" : config_.base_url.substr(path_start);
    while (!base_path.empty() && base_path.back() == '/') base_path.pop_back();
    path_ = base_path + "/chat/completions";

    if (!config_.api_key_env.empty()) {
        const char* key = std::getenv(config_.api_key_env.c_str());
        if (key == nullptr || *key == '\0') {
            throw ConfigurationError("credential variable " + config_.api_key_env + " is not set");
        }
        api_key_ = key;
    }
    id_ = "http:" + config_.model;
}

HttpBackend::~HttpBackend() = default;

HttpBackend::Response HttpBackend::post_with_retry(const std::string& body) {
    const auto deadline = Clock::now() + config_.deadline;
    httplib::Headers headers;
    if (!api_key_.empty()) {
        headers.emplace("Authorization", "Bearer " + api_key_);
    }

    struct Shared {
        std::mutex mutex;
        std::condition_variable cv;
        bool done = false;
        httplib::Error error = httplib::Error::Unknown;
        int status = 0;
        std::string body;
    };

    std::mt19937 rng{std::random_device{}()};
    for (int attempt = 1;; ++attempt) {
        const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
        if (remaining.count() <= 0) {
            throw BackendTimeout(config_.deadline.count());
        }

        httplib::Client client(origin_);
        client.set_connection_timeout(remaining);
        client.set_read_timeout(remaining);
        client.set_write_timeout(remaining);

        auto shared = std::make_shared<Shared>();
        std::thread worker([&client, &headers, &body, this, shared] {
            auto res = client.Post(path_, headers, body, "application/json");
            std::lock_guard lock(shared->mutex);
            shared->error = res.error();
            if (res) {
                shared->status = res->status;
                shared->body = res->body;
            }
            shared->done = true;
            shared->cv.notify_all();
        });

        bool timed_out = false;
        {
            std::unique_lock lock(shared->mutex);
            if (!shared->cv.wait_until(lock, deadline, [&] { return shared->done; })) {
                timed_out = true;
            }
        }
        if (timed_out) {
            client.stop();
        }
        worker.join();
        if (timed_out) {
            throw BackendTimeout(config_.deadline.count());
        }

        const bool transport_failure = shared->error != httplib::Error::Success;
        const bool transient = transport_failure || transient_status(shared->status);
        if (!transient) {
            if (shared->status >= 400) {
                throw BackendRefusal("backend returned HTTP " + std::to_string(shared->status) + ": " +
                                     shared->body.substr(0, 200));
            }
            return {shared->status, std::move(shared->body)};
        }
        if (attempt >= 2) {
            if (transport_failure) {
                throw TransportError("request failed: " + httplib::to_string(shared->error));
            }
            throw BackendRefusal("backend returned HTTP " + std::to_string(shared->status) + " after retry");
        }
        std::uniform_real_distribution<double> jitter(0.5, 1.5);
        auto wait = std::chrono::milliseconds(
            static_cast<std::int64_t>(static_cast<double>(config_.retry_backoff.count()) * jitter(rng)));
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
        if (wait >= left) {
            throw BackendTimeout(config_.deadline.count());
        }
        std::this_thread::sleep_for(wait);
    }
}

GenerationResult HttpBackend::generate(const PromptEnvelope& envelope) {
    const auto start = Clock::now();
    const auto response = post_with_retry(build_chat_request(envelope, config_));
    auto reply = parse_chat_response(response.body);
    const auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
    return GenerationResult{std::move(reply.text), id_, latency.count(), reply.truncated};
}

SupervisorVerdict HttpBackend::supervise(std::span<const ConversationTurn> history, std::string_view last_user_turn) {
    const auto response = post_with_retry(build_supervisor_request(history, last_user_turn, config_));
    return parse_supervisor_reply(parse_chat_response(response.body).text);
}

} // namespace beatline::gateway
