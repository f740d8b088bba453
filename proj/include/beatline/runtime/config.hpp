// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "beatline/affect/policy.hpp"
#include "beatline/gateway/backend.hpp"
#include "beatline/gateway/http_backend.hpp"

#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>

namespace beatline::runtime {

class ConfigError : public std::runtime_error {
  public:
    ConfigError(int line, const std::string& detail)
        : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + ": " + detail : detail), line_(line) {}
    [[nodiscard]] int line() const noexcept { return line_; }

  private:
    int line_;
};

enum class BackendKind : std::uint8_t { Mock, Http };

[[nodiscard]] BackendKind parse_backend_kind(std::string_view text);

/// Everything configurable about a session. Loaded from a key = value file:
///
///   # policy
///   shift_threshold        = 0.30
///   hold_tolerance         = 0.10
///   consecutive_limit      = 3
///   attention_radius       = 0.20
///   attention_fraction_min = 0.5
///   frame_rate_hz          = 10
///   # engine
///   intervention_turn_cap  = 5
///   segment_window_ms      = 0        # 0: windows close only on segment_end
///   lexicon                = data/lexicon/default.tsv
///   guardrail              = guardrail.txt
///   backend                = mock     # or http
///   # http backend
///   http.base_url          = https://api.openai.com/v1
///   http.model             = gpt-4
///   http.api_key_env       = OPENAI_API_KEY
///   http.deadline_ms       = 20000
///   http.retry_backoff_ms  = 200
///   http.temperature       = 0.7
///   http.max_tokens        = 400
///
/// Relative paths resolve against the config file's directory. Credentials are
/// never read from the file, only from the environment variable it names.
struct EngineConfig {
    affect::AlignmentPolicy policy;
    int intervention_turn_cap = 5;
    std::int64_t segment_window_ms = 0;
    std::filesystem::path lexicon;    // empty: built-in lexicon
    std::filesystem::path guardrail;  // empty: built-in deny list
    BackendKind backend = BackendKind::Mock;
    gateway::HttpBackendConfig http;
};

/// Applies the keys in text on top of base. Throws ConfigError.
[[nodiscard]] EngineConfig parse_config(std::string_view text, EngineConfig base = {},
                                        const std::filesystem::path& relative_to = {});
[[nodiscard]] EngineConfig load_config(const std::filesystem::path& path, EngineConfig base = {});

[[nodiscard]] std::shared_ptr<gateway::GenerationBackend> make_backend(const EngineConfig& config);

} // namespace beatline::runtime
