// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <regex>
#include <string>
#include <vector>

namespace beatline::gateway {

/// Deny-list filter for generated text. A hit means the caller should discard
/// the generation and fall back to fixed text. This is a minimal stand-in, not
/// a safety system.
class Guardrail {
  public:
    /// Patterns are ECMAScript regexes matched case-insensitively.
    /// Throws std::regex_error on a bad pattern.
    explicit Guardrail(std::vector<std::string> patterns);

    /// Built-in list of partisan slurs and blanket stereotypes about groups.
    [[nodiscard]] static Guardrail defaults();
    /// One pattern per line; '#' comments and blank lines ignored.
    [[nodiscard]] static Guardrail from_file(const std::filesystem::path& path);

    /// The first pattern that matches, if any.
    [[nodiscard]] std::optional<std::string> first_match(const std::string& text) const;
    [[nodiscard]] std::size_t size() const noexcept { return compiled_.size(); }

  private:
    std::vector<std::string> patterns_;
    std::vector<std::regex> compiled_;
};

} // namespace beatline::gateway
