// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/runtime/config.hpp"

#include "beatline/gateway/mock_backend.hpp"
#include "beatline/story/repository.hpp"
#include "beatline/story/text.hpp"

#include <charconv>
#include <functional>
#include <map>

namespace beatline::runtime {

namespace {

double to_double(std::string_view v, int line) {
    std::string s(v);
    std::size_t used = 0;
    double out = 0;
    try {
        out = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) {
        throw ConfigError(line, "expected a number, got '" + s + "'");
    }
    return out;
}

std::int64_t to_int(std::string_view v, int line) {
    std::int64_t out = 0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError(line, "expected an integer, got '" + std::string(v) + "'");
    }
    return out;
}

int to_int32(std::string_view v, int line) {
    const auto n = to_int(v, line);
    if (n < INT32_MIN || n > INT32_MAX) {
        throw ConfigError(line, "integer out of range: " + std::string(v));
    }
    return static_cast<int>(n);
}

} // namespace

BackendKind parse_backend_kind(std::string_view text) {
    if (story::iequals(text, "mock")) return BackendKind::Mock;
    if (story::iequals(text, "http")) return BackendKind::Http;
    throw ConfigError(0, "unknown backend '" + std::string(text) + "' (expected mock or http)");
}

EngineConfig parse_config(std::string_view text, EngineConfig cfg, const std::filesystem::path& relative_to) {
    auto path_value = [&](std::string_view v) {
        std::filesystem::path p{std::string(v)};
        return p.is_relative() && !relative_to.empty() ? relative_to / p : p;
    };

    using Setter = std::function<void(std::string_view, int)>;
    const std::map<std::string, Setter, std::less<>> setters{
        {"shift_threshold", [&](auto v, int l) { cfg.policy.shift_threshold = to_double(v, l); }},
        {"hold_tolerance", [&](auto v, int l) { cfg.policy.hold_tolerance = to_double(v, l); }},
        {"consecutive_limit", [&](auto v, int l) { cfg.policy.consecutive_limit = to_int32(v, l); }},
        {"attention_radius", [&](auto v, int l) { cfg.policy.attention_radius = to_double(v, l); }},
        {"attention_fraction_min", [&](auto v, int l) { cfg.policy.attention_fraction_min = to_double(v, l); }},
        {"frame_rate_hz", [&](auto v, int l) { cfg.policy.frame_rate_hz = to_double(v, l); }},
        {"intervention_turn_cap", [&](auto v, int l) { cfg.intervention_turn_cap = to_int32(v, l); }},
        {"segment_window_ms", [&](auto v, int l) { cfg.segment_window_ms = to_int(v, l); }},
        {"lexicon", [&](auto v, int) { cfg.lexicon = path_value(v); }},
        {"guardrail", [&](auto v, int) { cfg.guardrail = path_value(v); }},
        {"backend",
         [&](auto v, int l) {
             try {
                 cfg.backend = parse_backend_kind(v);
             } catch (const ConfigError& e) {
                 throw ConfigError(l, e.what());
             }
         }},
        {"http.base_url", [&](auto v, int) { cfg.http.base_url = std::string(v); }},
        {"http.model", [&](auto v, int) { cfg.http.model = std::string(v); }},
        {"http.api_key_env", [&](auto v, int) { cfg.http.api_key_env = std::string(v); }},
        {"http.deadline_ms", [&](auto v, int l) { cfg.http.deadline = std::chrono::milliseconds(to_int(v, l)); }},
        {"http.retry_backoff_ms",
         [&](auto v, int l) { cfg.http.retry_backoff = std::chrono::milliseconds(to_int(v, l)); }},
        {"http.temperature", [&](auto v, int l) { cfg.http.temperature = to_double(v, l); }},
        {"http.max_tokens", [&](auto v, int l) { cfg.http.max_tokens = to_int32(v, l); }},
    };

    const auto lines = story::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const int line_no = static_cast<int>(i) + 1;
        auto line = lines[i];
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = story::trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(line_no, "expected key = value");
        }
        const auto key = story::trim(line.substr(0, eq));
        const auto value = story::trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw ConfigError(line_no, "unknown key '" + std::string(key) + "'");
        }
        if (value.empty()) {
            throw ConfigError(line_no, "empty value for '" + std::string(key) + "'");
        }
        it->second(value, line_no);
    }

    try {
        cfg.policy.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(0, e.what());
    }
    if (cfg.intervention_turn_cap < 0) {
        throw ConfigError(0, "intervention_turn_cap must be >= 0");
    }
    if (cfg.segment_window_ms < 0) {
        throw ConfigError(0, "segment_window_ms must be >= 0");
    }
    if (cfg.http.deadline.count() <= 0) {
        throw ConfigError(0, "http.deadline_ms must be positive");
    }
    return cfg;
}

EngineConfig load_config(const std::filesystem::path& path, EngineConfig base) {
    std::string text;
    try {
        text = story::read_text_file(path);
    } catch (const std::exception& e) {
        throw ConfigError(0, e.what());
    }
    return parse_config(text, std::move(base), path.parent_path());
}

std::shared_ptr<gateway::GenerationBackend> make_backend(const EngineConfig& config) {
    switch (config.backend) {
    case BackendKind::Mock: return std::make_shared<gateway::MockBackend>();
    case BackendKind::Http: return std::make_shared<gateway::HttpBackend>(config.http);
    }
    return nullptr;
}

} // namespace beatline::runtime
