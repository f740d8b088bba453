// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "beatline/story/emotion.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace beatline::story {

enum class Orientation : std::uint8_t { Democrat, Republican, Other };

[[nodiscard]] std::string_view name(Orientation o) noexcept;
/// Accepts "Democrat"/"Democratic", "Republican"/"GOP", "Other"/"Independent" (any case).
[[nodiscard]] std::optional<Orientation> parse_orientation(std::string_view text);

struct NarratorPersona {
    std::string name;
    std::string age_band;
    std::string gender;
    std::string race_ethnicity;
    std::optional<Orientation> orientation;

    bool operator==(const NarratorPersona&) const = default;
};

struct StorySegment {
    int index = 0;  // 1-based and contiguous within an outline
    std::string source_text;
    EmotionCategory expected_emotion = EmotionCategory::Neutral;
    std::string raw_label;  // label exactly as written, e.g. "Anxious"

    bool operator==(const StorySegment&) const = default;
};

/// A parsed Story.txt file. The narrator's orientation lives on the persona so
/// there is a single source of truth for it.
struct StoryOutline {
    std::string story_id;
    std::vector<StorySegment> segments;
    std::string issue;
    NarratorPersona persona;

    [[nodiscard]] std::optional<Orientation> narrator_orientation() const noexcept {
        return persona.orientation;
    }
    [[nodiscard]] std::vector<EmotionCategory> trajectory() const;
    [[nodiscard]] std::size_t segment_count() const noexcept { return segments.size(); }
    /// Segment by 1-based index; throws std::out_of_range.
    [[nodiscard]] const StorySegment& segment(int index) const;

    bool operator==(const StoryOutline&) const = default;
};

struct UserProfile {
    std::optional<Orientation> orientation;
    std::string salient_issue;
    std::string age_band;
    std::string gender;
    std::string race_ethnicity;

    [[nodiscard]] bool ready_for_selection() const noexcept {
        return orientation.has_value() && !salient_issue.empty();
    }
    bool operator==(const UserProfile&) const = default;
};

/// Parses the Story.txt layout:
///
///     [Key: value metadata lines]
///     Segment 1
///     <body, any number of lines>
///     Expected emotion: <label>
///     Segment 2
///     ...
///
/// Blank lines between blocks are ignored. Metadata keys: Narrator, Orientation,
/// Issue, Age, Gender, Ethnicity.
[[nodiscard]] StoryOutline parse_story_outline(std::string_view raw_text, std::string story_id);

/// Writes the outline back in the same layout; parse(serialize(o)) == o.
[[nodiscard]] std::string serialize_outline(const StoryOutline& outline);

} // namespace beatline::story
