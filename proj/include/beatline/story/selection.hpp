// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "beatline/story/outline.hpp"

#include <span>

namespace beatline::story {

/// Democrat <-> Republican. A user tagged "other" may hear any narrator whose
/// orientation is not also "other".
[[nodiscard]] bool is_out_group(Orientation user, Orientation narrator) noexcept;

/// Picks an out-group story, preferring one whose issue matches the profile's
/// salient issue. Ties break by story_id ascending. Throws NoEligibleStory.
/// Requires profile.orientation to be set (std::invalid_argument otherwise).
[[nodiscard]] const StoryOutline& select_story(const UserProfile& profile,
                                               std::span<const StoryOutline> repository);

/// Demographics come from the profile where present; orientation always stays
/// the narrator's.
[[nodiscard]] NarratorPersona select_persona(const UserProfile& profile, const StoryOutline& outline);

} // namespace beatline::story
