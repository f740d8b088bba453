// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace beatline::story {

/// The seven categories produced by the facial emotion classifier.
enum class EmotionCategory : std::uint8_t {
    Happy,
    Sad,
    Angry,
    Disgusted,
    Fearful,
    Surprised,
    Neutral,
};

inline constexpr std::size_t kEmotionCount = 7;

inline constexpr std::array<EmotionCategory, kEmotionCount> kAllEmotions = {
    EmotionCategory::Happy,   EmotionCategory::Sad,       EmotionCategory::Angry,
    EmotionCategory::Disgusted, EmotionCategory::Fearful, EmotionCategory::Surprised,
    EmotionCategory::Neutral,
};

[[nodiscard]] constexpr std::size_t index_of(EmotionCategory c) noexcept {
    return static_cast<std::size_t>(c);
}

/// Lowercase canonical name ("happy", "fearful", ...).
[[nodiscard]] std::string_view name(EmotionCategory c) noexcept;

/// Case-insensitive lookup against the canonical names and the alias table
/// (anxious/scared/afraid -> fearful, shocked -> surprised, content -> happy).
/// Throws UnknownEmotion for anything else, including the empty string.
[[nodiscard]] EmotionCategory canonical_emotion(std::string_view label);

} // namespace beatline::story
