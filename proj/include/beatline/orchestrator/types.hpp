// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "beatline/story/outline.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace beatline::orchestrator {

using story::EmotionCategory;
using story::NarratorPersona;
using story::StoryOutline;
using story::UserProfile;

enum class Phase : std::uint8_t { Onboarding, Narrating, AwaitingGeneration, Intervening, Ended };
enum class NarrationMode : std::uint8_t { Baseline, Emotive };
enum class InterventionCause : std::uint8_t { EmotionMismatch, Inattention, UserInterrupt };
enum class Speaker : std::uint8_t { Narrator, User, System };

[[nodiscard]] std::string_view name(Phase p) noexcept;
[[nodiscard]] std::string_view name(NarrationMode m) noexcept;
/// Wire names: "emotion", "attention", "interrupt".
[[nodiscard]] std::string_view name(InterventionCause c) noexcept;
[[nodiscard]] std::string_view name(Speaker s) noexcept;

struct ConversationTurn {
    int turn_index = 0;
    Speaker speaker = Speaker::System;
    std::string text;
    std::optional<double> sentiment;  // user turns only
    std::int64_t t_ms = 0;

    bool operator==(const ConversationTurn&) const = default;
};

struct Proceed {
    int segment = 0;
    NarrationMode mode = NarrationMode::Baseline;
    bool operator==(const Proceed&) const = default;
};
struct Intervene {
    InterventionCause cause = InterventionCause::EmotionMismatch;
    bool operator==(const Intervene&) const = default;
};
struct RepeatSegment {
    int segment = 0;
    bool operator==(const RepeatSegment&) const = default;
};
struct EndStory {
    bool operator==(const EndStory&) const = default;
};

using Action = std::variant<Proceed, Intervene, RepeatSegment, EndStory>;

/// "proceed:3:emotive", "intervene:attention", "repeat:2", "end".
[[nodiscard]] std::string to_string(const Action& action);
/// Inverse of to_string; throws std::invalid_argument.
[[nodiscard]] Action parse_action(std::string_view text);

enum class PromptRole : std::uint8_t { Narrator, Supervisor };
enum class PromptPurpose : std::uint8_t { Narration, Intervention, FollowUp };

[[nodiscard]] std::string_view name(PromptPurpose p) noexcept;

/// Everything a generation backend needs to produce one narrator line.
struct PromptEnvelope {
    PromptRole role = PromptRole::Narrator;
    PromptPurpose purpose = PromptPurpose::Narration;
    std::optional<NarrationMode> mode;       // narration only
    std::optional<InterventionCause> cause;  // intervention / follow-up only
    std::optional<int> segment_index;
    std::vector<std::string> directives;
    std::optional<std::string> source_segment;
    std::optional<EmotionCategory> expected_emotion;  // emotive narration only
    std::vector<std::string> addressed_utterances;    // queued user interruptions, arrival order
    std::vector<ConversationTurn> history_window;
    NarratorPersona persona;

    bool operator==(const PromptEnvelope&) const = default;
};

struct SessionState {
    Phase phase = Phase::Onboarding;
    UserProfile profile;
    std::optional<std::string> requested_story_id;
    std::optional<StoryOutline> outline;
    std::optional<NarratorPersona> persona;
    /// Segment whose narration window is open (or was just closed). Ends at
    /// segment_count + 1 once the story completes.
    int cursor = 1;
    NarrationMode mode_next = NarrationMode::Baseline;
    int mismatch_streak = 0;
    int inattention_streak = 0;
    std::vector<std::string> queued_utterances;
    std::vector<ConversationTurn> history;
    int dialogue_turns_in_intervention = 0;
    std::optional<InterventionCause> intervention_cause;
    int interventions = 0;
    bool aborted = false;

    [[nodiscard]] int segment_count() const noexcept {
        return outline ? static_cast<int>(outline->segment_count()) : 0;
    }
    bool operator==(const SessionState&) const = default;
};

} // namespace beatline::orchestrator
