// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "beatline/gateway/verdict.hpp"
#include "beatline/orchestrator/types.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace beatline::gateway {

using orchestrator::ConversationTurn;
using orchestrator::PromptEnvelope;

class BackendError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class BackendTimeout : public BackendError {
  public:
    explicit BackendTimeout(std::int64_t deadline_ms)
        : BackendError("backend did not answer within " + std::to_string(deadline_ms) + " ms") {}
};

/// The backend declined the request; retrying will not help.
class BackendRefusal : public BackendError {
  public:
    using BackendError::BackendError;
};

class MalformedResponse : public BackendError {
  public:
    using BackendError::BackendError;
};

/// Connection-level failure that survived the retry.
class TransportError : public BackendError {
  public:
    using BackendError::BackendError;
};

struct GenerationResult {
    std::string text;
    std::string backend_id;
    std::int64_t latency_ms = 0;
    bool truncated = false;

    bool operator==(const GenerationResult&) const = default;
};

/// A text-generation engine for the narrator and the supervisor. Implementations
/// must be safe to call from several sessions at once.
class GenerationBackend {
  public:
    virtual ~GenerationBackend() = default;

    [[nodiscard]] virtual std::string_view id() const noexcept = 0;
    /// Throws BackendError subclasses.
    [[nodiscard]] virtual GenerationResult generate(const PromptEnvelope& envelope) = 0;
    /// Throws BackendError subclasses.
    [[nodiscard]] virtual SupervisorVerdict supervise(std::span<const ConversationTurn> history,
                                                      std::string_view last_user_turn) = 0;
};

/// Checks the envelope is a narrator request, then forwards to the backend.
[[nodiscard]] GenerationResult generate(const PromptEnvelope& envelope, GenerationBackend& backend);

/// Supervises, mapping any backend failure to ReturnToStory so a broken
/// supervisor never strands the user in dialogue.
[[nodiscard]] SupervisorVerdict supervise(std::span<const ConversationTurn> history, std::string_view last_user_turn,
                                          GenerationBackend& backend);

/// Stable text form of an envelope: role, purpose, mode, cause, segment,
/// persona, directives, source segment, expected emotion, addressed utterances,
/// history. Two equal envelopes always serialize to the same bytes.
[[nodiscard]] std::string serialize_envelope(const PromptEnvelope& envelope);

/// Deterministic narrator line for an envelope:
///   baseline narration -> the source segment verbatim
///   emotive narration  -> "«emotive:<emotion>» <source>"
///   interventions and follow-ups -> a fixed question for the cause
[[nodiscard]] std::string canned_reply(const PromptEnvelope& envelope);

/// What to say when generation fails or is filtered: the source segment for
/// narration, the canned question otherwise.
[[nodiscard]] std::string fallback_text(const PromptEnvelope& envelope);

} // namespace beatline::gateway
