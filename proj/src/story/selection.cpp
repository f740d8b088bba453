// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/story/selection.hpp"

#include "beatline/story/errors.hpp"
#include "beatline/story/text.hpp"

#include <stdexcept>

namespace beatline::story {

bool is_out_group(Orientation user, Orientation narrator) noexcept {
    if (user == narrator) {
        return false;
    }
    if (user == Orientation::Other) {
        return true;
    }
    return narrator != Orientation::Other;
}

const StoryOutline& select_story(const UserProfile& profile, std::span<const StoryOutline> repository) {
    if (!profile.orientation) {
        throw std::invalid_argument("select_story: profile orientation is not set");
    }
    const std::string wanted_issue = to_lower(trim(profile.salient_issue));

    const StoryOutline* best = nullptr;
    bool best_matches_issue = false;
    for (const auto& outline : repository) {
        const auto narrator = outline.narrator_orientation();
        if (!narrator || !is_out_group(*profile.orientation, *narrator)) {
            continue;
        }
        const bool matches = !wanted_issue.empty() && to_lower(outline.issue) == wanted_issue;
        if (best == nullptr || (matches && !best_matches_issue) ||
            (matches == best_matches_issue && outline.story_id < best->story_id)) {
            best = &outline;
            best_matches_issue = matches;
        }
    }
    if (best == nullptr) {
        throw NoEligibleStory();
    }
    return *best;
}

NarratorPersona select_persona(const UserProfile& profile, const StoryOutline& outline) {
    NarratorPersona persona = outline.persona;
    if (!profile.age_band.empty()) persona.age_band = profile.age_band;
    if (!profile.gender.empty()) persona.gender = profile.gender;
    if (!profile.race_ethnicity.empty()) persona.race_ethnicity = profile.race_ethnicity;
    persona.orientation = outline.narrator_orientation();
    return persona;
}

} // namespace beatline::story
