// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/gateway/backend.hpp"

#include <sstream>

namespace beatline::gateway {

using orchestrator::InterventionCause;
using orchestrator::NarrationMode;
using orchestrator::PromptPurpose;
using orchestrator::PromptRole;

GenerationResult generate(const PromptEnvelope& envelope, GenerationBackend& backend) {
    if (envelope.role != PromptRole::Narrator) {
        throw std::invalid_argument("generate() takes narrator envelopes only");
    }
    auto result = backend.generate(envelope);
    if (result.text.empty()) {
        throw MalformedResponse("backend returned empty text");
    }
    return result;
}

SupervisorVerdict supervise(std::span<const ConversationTurn> history, std::string_view last_user_turn,
                            GenerationBackend& backend) {
    try {
        return backend.supervise(history, last_user_turn);
    } catch (const BackendError& e) {
        return {SupervisorVerdict::Kind::ReturnToStory, std::string("fail-safe: ") + e.what()};
    }
}

std::string serialize_envelope(const PromptEnvelope& env) {
    std::ostringstream out;
    out << "role: " << (env.role == PromptRole::Narrator ? "narrator" : "supervisor") << '\n';
    out << "purpose: " << orchestrator::name(env.purpose) << '\n';
    if (env.mode) out << "mode: " << orchestrator::name(*env.mode) << '\n';
    if (env.cause) out << "cause: " << orchestrator::name(*env.cause) << '\n';
    if (env.segment_index) out << "segment: " << *env.segment_index << '\n';
    out << "persona: name=" << env.persona.name << "; age=" << env.persona.age_band
        << "; gender=" << env.persona.gender << "; ethnicity=" << env.persona.race_ethnicity << "; orientation="
        << (env.persona.orientation ? story::name(*env.persona.orientation) : std::string_view("")) << '\n';
    for (std::size_t i = 0; i < env.directives.size(); ++i) {
        out << "directive[" << i << "]: " << env.directives[i] << '\n';
    }
    if (env.source_segment) out << "source:\n" << *env.source_segment << "\nend-source\n";
    if (env.expected_emotion) out << "expected_emotion: " << story::name(*env.expected_emotion) << '\n';
    for (const auto& u : env.addressed_utterances) {
        out << "addressed: " << u << '\n';
    }
    for (const auto& turn : env.history_window) {
        out << "history[" << turn.turn_index << "] " << orchestrator::name(turn.speaker) << " @" << turn.t_ms;
        if (turn.sentiment) out << " sentiment=" << *turn.sentiment;
        out << ": " << turn.text << '\n';
    }
    return out.str();
}

std::string canned_reply(const PromptEnvelope& env) {
    const std::string segment = env.segment_index ? std::to_string(*env.segment_index) : std::string("this");
    switch (env.purpose) {
    case PromptPurpose::Narration: {
        const std::string source = env.source_segment.value_or("");
        if (env.mode == NarrationMode::Emotive && env.expected_emotion) {
            return "«emotive:" + std::string(story::name(*env.expected_emotion)) + "» " + source;
        }
        return source;
    }
    case PromptPurpose::Intervention:
        switch (env.cause.value_or(InterventionCause::EmotionMismatch)) {
        case InterventionCause::EmotionMismatch:
            return "Let's pause here for a moment. What do you think of the story so far?";
        case InterventionCause::Inattention:
            return "It seems like you aren't paying attention right now. Would you like me to repeat segment " +
                   segment + "?";
        case InterventionCause::UserInterrupt: {
            std::string out = "You said";
            for (std::size_t i = 0; i < env.addressed_utterances.size(); ++i) {
                out += (i == 0 ? ": \"" : " and \"") + env.addressed_utterances[i] + "\"";
            }
            return out + ". Let me respond to that before we go on.";
        }
        }
        break;
    case PromptPurpose::FollowUp:
        return "Thanks for telling me. What part of the story has stayed with you the most?";
    }
    return "Shall we go on with the story?";
}

std::string fallback_text(const PromptEnvelope& env) {
    if (env.purpose == PromptPurpose::Narration && env.source_segment) {
        return *env.source_segment;
    }
    return canned_reply(env);
}

} // namespace beatline::gateway
