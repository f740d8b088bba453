// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "beatline/gateway/backend.hpp"

namespace beatline::gateway {

/// Offline backend. Narration comes from canned_reply(); the supervisor follows
/// fixed rules, checked in order:
///   1. the reply mentions continue / go on / resume   -> ReturnToStory
///   2. the reply contains '?'                         -> ContinueConversation
///   3. the reply is empty or whitespace               -> ContinueConversation
///   4. anything else                                  -> ReturnToStory
/// Stateless, so one instance can be shared by every session.
class MockBackend final : public GenerationBackend {
  public:
    [[nodiscard]] std::string_view id() const noexcept override { return "mock"; }
    [[nodiscard]] GenerationResult generate(const PromptEnvelope& envelope) override;
    [[nodiscard]] SupervisorVerdict supervise(std::span<const ConversationTurn> history,
                                              std::string_view last_user_turn) override;
};

/// The supervisor rules above, as a pure function.
[[nodiscard]] SupervisorVerdict mock_supervisor_verdict(std::string_view last_user_turn);

} // namespace beatline::gateway
