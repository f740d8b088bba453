// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "beatline/orchestrator/types.hpp"

#include <string_view>

namespace beatline::orchestrator {

/// Narration constraints carried by every narrator envelope.
namespace directive {
inline constexpr std::string_view kMaxFiveSentences = "Use a maximum of five sentences.";
inline constexpr std::string_view kFirstPerson = "Tell the story from a first-person perspective.";
inline constexpr std::string_view kAdhereToSource = "Adhere to the source material.";
inline constexpr std::string_view kNoNamePrefix = "Do not begin the line with the name of the AI narrator.";
inline constexpr std::string_view kStoryteller = "a charismatic and engaging storyteller";
inline constexpr std::string_view kUseHistory =
    "Use the conversation history, including the sentiment score logged for each user turn, as context.";
/// Emotive mode; '{}' is replaced by the expected emotion.
inline constexpr std::string_view kEmotiveTemplate =
    "Guide the user toward the expected emotion ({}) by using descriptive and emotive language.";
} // namespace directive

/// "You are Taylor, a charismatic and engaging storyteller." plus the
/// narrator's background when known.
[[nodiscard]] std::vector<std::string> persona_directives(const NarratorPersona& persona);

[[nodiscard]] std::string emotive_directive(EmotionCategory expected);

/// Narration for one segment. Phase must be Narrating, AwaitingGeneration or
/// Intervening (std::logic_error otherwise).
[[nodiscard]] PromptEnvelope build_narrator_prompt(const SessionState& state, const story::StorySegment& segment,
                                                   NarrationMode mode);

/// Opening line of an intervention dialogue. Phase must be Intervening.
[[nodiscard]] PromptEnvelope build_intervention_prompt(const SessionState& state, InterventionCause cause);

/// Next narrator question after the supervisor asked to keep talking.
[[nodiscard]] PromptEnvelope build_followup_prompt(const SessionState& state);

} // namespace beatline::orchestrator
