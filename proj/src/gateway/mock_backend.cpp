// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/gateway/mock_backend.hpp"

#include "beatline/affect/sentiment.hpp"
#include "beatline/story/text.hpp"

#include <array>

namespace beatline::gateway {

SupervisorVerdict mock_supervisor_verdict(std::string_view last_user_turn) {
    static constexpr std::array<std::string_view, 3> kResumePhrases = {" continue ", " go on ", " resume "};
    using Kind = SupervisorVerdict::Kind;

    std::string joined = " ";
    for (const auto& token : affect::tokenize(last_user_turn)) {
        joined += token;
        joined += ' ';
    }
    for (auto phrase : kResumePhrases) {
        if (joined.find(phrase) != std::string::npos) {
            return {Kind::ReturnToStory, "user asked to continue"};
        }
    }
    if (last_user_turn.find('?') != std::string_view::npos) {
        return {Kind::ContinueConversation, "user asked a question"};
    }
    if (story::trim(last_user_turn).empty()) {
        return {Kind::ContinueConversation, "no response"};
    }
    return {Kind::ReturnToStory, "user answered"};
}

GenerationResult MockBackend::generate(const PromptEnvelope& envelope) {
    return GenerationResult{canned_reply(envelope), std::string(id()), 0, false};
}

SupervisorVerdict MockBackend::supervise(std::span<const ConversationTurn>, std::string_view last_user_turn) {
    return mock_supervisor_verdict(last_user_turn);
}

} // namespace beatline::gateway
