// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "beatline/story/outline.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace beatline::orchestrator {

/// Slots found in one onboarding utterance; empty fields were not mentioned.
struct SlotUpdate {
    std::optional<story::Orientation> orientation;
    std::string salient_issue;
    std::string age_band;
    std::string gender;
    std::string race_ethnicity;

    [[nodiscard]] bool empty() const noexcept {
        return !orientation && salient_issue.empty() && age_band.empty() && gender.empty() && race_ethnicity.empty();
    }
};

class SlotExtractor {
  public:
    virtual ~SlotExtractor() = default;
    [[nodiscard]] virtual SlotUpdate extract(std::string_view utterance) const = 0;
};

/// Deterministic keyword table: party words map to an orientation, a fixed
/// issue list maps to issue tags, and a few demographic words fill the persona
/// slots. The first match of each slot wins.
class KeywordSlotExtractor final : public SlotExtractor {
  public:
    [[nodiscard]] SlotUpdate extract(std::string_view utterance) const override;
};

/// Fills profile fields from an update; later answers overwrite earlier ones.
void merge(story::UserProfile& profile, const SlotUpdate& update);

/// Whether a reply to a repeat offer says yes. "No", "continue", "skip" and
/// similar veto any affirmative word.
[[nodiscard]] bool is_affirmative_repeat(std::string_view utterance);

} // namespace beatline::orchestrator
