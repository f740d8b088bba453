// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/orchestrator/prompts.hpp"

#include "beatline/orchestrator/orchestrator.hpp"

#include <stdexcept>

namespace beatline::orchestrator {

namespace {

NarratorPersona persona_of(const SessionState& state) {
    if (state.persona) return *state.persona;
    if (state.outline) return state.outline->persona;
    return {};
}

void require_persona_phase(const SessionState& state, std::string_view op, bool allow_narrating) {
    const bool ok = state.phase == Phase::Intervening ||
                    (allow_narrating && (state.phase == Phase::Narrating || state.phase == Phase::AwaitingGeneration));
    if (!ok || !state.outline) {
        throw WrongPhase(op, state.phase);
    }
}

} // namespace

std::vector<std::string> persona_directives(const NarratorPersona& persona) {
    const std::string who = persona.name.empty() ? std::string("the narrator") : persona.name;
    std::vector<std::string> out;
    out.push_back("You are " + who + ", " + std::string(directive::kStoryteller) + ".");

    std::string background;
    const auto add = [&background](std::string_view label, const std::string& value) {
        if (value.empty() || value == "unspecified") return;
        if (!background.empty()) background += "; ";
        background.append(label).append(": ").append(value);
    };
    add("age", persona.age_band);
    add("gender", persona.gender);
    add("ethnicity", persona.race_ethnicity);
    if (persona.orientation) {
        add("political orientation", std::string(story::name(*persona.orientation)));
    }
    if (!background.empty()) {
        out.push_back("Narrator background (" + background + ").");
    }
    return out;
}

std::string emotive_directive(EmotionCategory expected) {
    std::string out(directive::kEmotiveTemplate);
    out.replace(out.find("{}"), 2, story::name(expected));
    return out;
}

PromptEnvelope build_narrator_prompt(const SessionState& state, const story::StorySegment& segment,
                                     NarrationMode mode) {
    require_persona_phase(state, "build_narrator_prompt", true);
    PromptEnvelope env;
    env.role = PromptRole::Narrator;
    env.purpose = PromptPurpose::Narration;
    env.mode = mode;
    env.segment_index = segment.index;
    env.persona = persona_of(state);
    env.directives = persona_directives(env.persona);
    env.directives.emplace_back("Narrate the source segment below as the next beat of your story.");
    env.directives.emplace_back(directive::kMaxFiveSentences);
    env.directives.emplace_back(directive::kFirstPerson);
    env.directives.emplace_back(directive::kAdhereToSource);
    env.directives.emplace_back(directive::kNoNamePrefix);
    env.directives.emplace_back(directive::kUseHistory);
    if (mode == NarrationMode::Emotive) {
        env.directives.push_back(emotive_directive(segment.expected_emotion));
        env.expected_emotion = segment.expected_emotion;
    }
    env.source_segment = segment.source_text;
    env.history_window = state.history;
    return env;
}

PromptEnvelope build_intervention_prompt(const SessionState& state, InterventionCause cause) {
    require_persona_phase(state, "build_intervention_prompt", false);
    PromptEnvelope env;
    env.role = PromptRole::Narrator;
    env.purpose = PromptPurpose::Intervention;
    env.cause = cause;
    env.segment_index = state.cursor;
    env.persona = persona_of(state);
    env.directives = persona_directives(env.persona);
    env.directives.emplace_back("Pause the story. Speak directly to the user in one or two sentences.");
    switch (cause) {
    case InterventionCause::EmotionMismatch:
        env.directives.push_back("Ask the user for their opinion of the story so far (segments 1 to " +
                                 std::to_string(state.cursor) + "), with one open-ended question.");
        env.source_segment = state.outline->segment(state.cursor).source_text;
        break;
    case InterventionCause::Inattention:
        env.directives.push_back(
            "Tell the user that they don't seem to be paying attention, and ask them if they would like segment " +
            std::to_string(state.cursor) + " of the story to be repeated.");
        env.source_segment = state.outline->segment(state.cursor).source_text;
        break;
    case InterventionCause::UserInterrupt:
        env.directives.emplace_back(
            "The user spoke while you were narrating. Address everything they said, in the order they said it, "
            "then offer to continue the story.");
        for (const auto& u : state.queued_utterances) {
            env.directives.push_back("User said: \"" + u + "\"");
        }
        env.addressed_utterances = state.queued_utterances;
        break;
    }
    env.directives.emplace_back(directive::kNoNamePrefix);
    env.directives.emplace_back(directive::kUseHistory);
    env.history_window = state.history;
    return env;
}

PromptEnvelope build_followup_prompt(const SessionState& state) {
    require_persona_phase(state, "build_followup_prompt", false);
    PromptEnvelope env;
    env.role = PromptRole::Narrator;
    env.purpose = PromptPurpose::FollowUp;
    env.cause = state.intervention_cause;
    env.segment_index = state.cursor;
    env.persona = persona_of(state);
    env.directives = persona_directives(env.persona);
    env.directives.emplace_back(
        "Continue the conversation with one short question that responds to the user's last reply and connects "
        "it to the story.");
    env.directives.emplace_back("Avoid personal or sensitive questions about the user's family or private life.");
    env.directives.emplace_back(directive::kNoNamePrefix);
    env.directives.emplace_back(directive::kUseHistory);
    env.history_window = state.history;
    return env;
}

} // namespace beatline::orchestrator
