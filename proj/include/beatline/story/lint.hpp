// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "beatline/story/outline.hpp"

#include <optional>
#include <string>
#include <vector>

namespace beatline::story {

enum class DiagnosticCode : std::uint8_t {
    SegmentLengthOutOfConvention,
    MissingPersonaField,
    MissingOrientation,
    MissingIssue,
};

[[nodiscard]] std::string_view name(DiagnosticCode code) noexcept;

struct Diagnostic {
    DiagnosticCode code;
    std::optional<int> segment;
    std::string message;
};

/// Beats are conventionally 2-5 sentences long.
inline constexpr int kMinSentences = 2;
inline constexpr int kMaxSentences = 5;

/// Counts runs of terminal punctuation (. ! ?) that fall outside double quotes
/// (straight or curly). Trailing text without a terminator counts as one more
/// sentence.
[[nodiscard]] int count_sentences(std::string_view text);

/// Non-fatal lint over a parsed outline. Empty result means clean.
[[nodiscard]] std::vector<Diagnostic> validate_outline(const StoryOutline& outline);

} // namespace beatline::story
