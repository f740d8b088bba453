// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/story/emotion.hpp"

#include "beatline/story/errors.hpp"
#include "beatline/story/text.hpp"

#include <string>
#include <utility>

namespace beatline::story {

namespace {

constexpr std::array<std::string_view, kEmotionCount> kNames = {
    "happy", "sad", "angry", "disgusted", "fearful", "surprised", "neutral",
};

// Story authors label beats with everyday words; the classifier only knows seven.
constexpr std::array<std::pair<std::string_view, EmotionCategory>, 6> kAliases = {{
    {"anxious", EmotionCategory::Fearful},
    {"scared", EmotionCategory::Fearful},
    {"afraid", EmotionCategory::Fearful},
    {"surprised", EmotionCategory::Surprised},
    {"shocked", EmotionCategory::Surprised},
    {"content", EmotionCategory::Happy},
}};

} // namespace

std::string_view name(EmotionCategory c) noexcept { return kNames[index_of(c)]; }

EmotionCategory canonical_emotion(std::string_view label) {
    const std::string key = to_lower(trim(label));
    if (key.empty()) {
        throw UnknownEmotion(std::string(label));
    }
    for (auto c : kAllEmotions) {
        if (key == kNames[index_of(c)]) {
            return c;
        }
    }
    for (const auto& [alias, c] : kAliases) {
        if (key == alias) {
            return c;
        }
    }
    throw UnknownEmotion(std::string(label));
}

} // namespace beatline::story
