// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/orchestrator/types.hpp"

#include <stdexcept>

namespace beatline::orchestrator {

std::string_view name(Phase p) noexcept {
    switch (p) {
    case Phase::Onboarding: return "onboarding";
    case Phase::Narrating: return "narrating";
    case Phase::AwaitingGeneration: return "awaiting_generation";
    case Phase::Intervening: return "intervening";
    case Phase::Ended: return "ended";
    }
    return "unknown";
}

std::string_view name(NarrationMode m) noexcept { return m == NarrationMode::Baseline ? "baseline" : "emotive"; }

std::string_view name(InterventionCause c) noexcept {
    switch (c) {
    case InterventionCause::EmotionMismatch: return "emotion";
    case InterventionCause::Inattention: return "attention";
    case InterventionCause::UserInterrupt: return "interrupt";
    }
    return "unknown";
}

std::string_view name(Speaker s) noexcept {
    switch (s) {
    case Speaker::Narrator: return "narrator";
    case Speaker::User: return "user";
    case Speaker::System: return "system";
    }
    return "unknown";
}

std::string_view name(PromptPurpose p) noexcept {
    switch (p) {
    case PromptPurpose::Narration: return "narration";
    case PromptPurpose::Intervention: return "intervention";
    case PromptPurpose::FollowUp: return "follow_up";
    }
    return "unknown";
}

namespace {

struct ActionPrinter {
    std::string operator()(const Proceed& p) const {
        return "proceed:" + std::to_string(p.segment) + ":" + std::string(name(p.mode));
    }
    std::string operator()(const Intervene& i) const { return "intervene:" + std::string(name(i.cause)); }
    std::string operator()(const RepeatSegment& r) const { return "repeat:" + std::to_string(r.segment); }
    std::string operator()(const EndStory&) const { return "end"; }
};

int parse_index(std::string_view s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos) {
        throw std::invalid_argument("bad segment index in action: '" + std::string(s) + "'");
    }
    return std::stoi(std::string(s));
}

} // namespace

std::string to_string(const Action& action) { return std::visit(ActionPrinter{}, action); }

Action parse_action(std::string_view text) {
    if (text == "end") {
        return EndStory{};
    }
    const auto colon = text.find(':');
    const auto head = text.substr(0, colon);
    const auto rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    if (head == "proceed") {
        const auto c2 = rest.find(':');
        if (c2 == std::string_view::npos) {
            throw std::invalid_argument("proceed action needs a mode");
        }
        const auto mode = rest.substr(c2 + 1);
        if (mode != "baseline" && mode != "emotive") {
            throw std::invalid_argument("bad narration mode '" + std::string(mode) + "'");
        }
        return Proceed{parse_index(rest.substr(0, c2)),
                       mode == "baseline" ? NarrationMode::Baseline : NarrationMode::Emotive};
    }
    if (head == "repeat") {
        return RepeatSegment{parse_index(rest)};
    }
    if (head == "intervene") {
        if (rest == "emotion") return Intervene{InterventionCause::EmotionMismatch};
        if (rest == "attention") return Intervene{InterventionCause::Inattention};
        if (rest == "interrupt") return Intervene{InterventionCause::UserInterrupt};
    }
    throw std::invalid_argument("unrecognised action '" + std::string(text) + "'");
}

} // namespace beatline::orchestrator
