// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace beatline::affect {

using Lexicon = std::unordered_map<std::string, double>;

class MalformedLexicon : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Normalisation constant and negation multiplier of the valence-sum scorer.
inline constexpr double kSentimentAlpha = 15.0;
inline constexpr double kNegationScalar = -0.74;
inline constexpr int kNegationWindow = 3;

/// Lowercased word tokens; punctuation other than in-word apostrophes separates
/// tokens. Curly apostrophes are folded to ASCII.
[[nodiscard]] std::vector<std::string> tokenize(std::string_view utterance);

[[nodiscard]] bool is_negator(std::string_view token) noexcept;

/// Sum of matched valences (each flipped by kNegationScalar when a negator is
/// among the three preceding tokens), squashed with s / sqrt(s^2 + alpha).
/// Returns 0 for empty or unmatched input.
[[nodiscard]] double sentiment_score(std::string_view utterance, const Lexicon& lexicon);

/// "lexeme<TAB>valence" per line; blank lines and '#' comments ignored.
[[nodiscard]] Lexicon parse_lexicon(std::string_view text);
[[nodiscard]] Lexicon load_lexicon(const std::filesystem::path& path);

/// The 20-entry lexicon shipped as data/lexicon/default.tsv.
[[nodiscard]] const Lexicon& default_lexicon();

} // namespace beatline::affect
