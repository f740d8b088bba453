// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "beatline/affect/alignment.hpp"
#include "beatline/gateway/verdict.hpp"
#include "beatline/orchestrator/slots.hpp"
#include "beatline/orchestrator/types.hpp"

#include <functional>
#include <memory>
#include <stdexcept>
#include <variant>

namespace beatline::orchestrator {

class OrchestratorError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class WrongPhase : public OrchestratorError {
  public:
    WrongPhase(std::string_view op, Phase actual)
        : OrchestratorError(std::string(op) + " is not valid in phase " + std::string(name(actual))),
          actual_(actual) {}
    [[nodiscard]] Phase actual() const noexcept { return actual_; }

  private:
    Phase actual_;
};

class EmptyRepository : public OrchestratorError {
  public:
    EmptyRepository() : OrchestratorError("story repository is empty") {}
};

class UnknownStory : public OrchestratorError {
  public:
    explicit UnknownStory(const std::string& id) : OrchestratorError("no story with id '" + id + "'") {}
};

using SentimentFn = std::function<double(std::string_view)>;

struct OrchestratorConfig {
    std::shared_ptr<const std::vector<StoryOutline>> repository;
    affect::AlignmentPolicy policy;
    /// Supervisor-approved continuation turns before the narrator is forced
    /// back to the story.
    int intervention_turn_cap = 5;
};

/// Appends a turn with the next index; user turns are scored with sentiment_fn.
void record_turn(SessionState& state, Speaker speaker, std::string text, std::int64_t t_ms,
                 const SentimentFn& sentiment_fn);

struct SlotQuestion {
    std::string text;
};

/// Onboarding either asks for the next missing slot or hands back the prompt
/// for the first segment.
using OnboardingReply = std::variant<SlotQuestion, PromptEnvelope>;

struct SupervisorOutcome {
    /// Empty while the conversation continues.
    std::optional<Action> action;
    bool forced_return = false;
};

/// The session state machine. Holds only immutable configuration; all mutable
/// data lives in SessionState, so one Orchestrator can drive any number of
/// sessions. Every transition either completes or throws before touching state.
class Orchestrator {
  public:
    Orchestrator(OrchestratorConfig config, std::shared_ptr<const SlotExtractor> extractor,
                 SentimentFn sentiment_fn);

    [[nodiscard]] const OrchestratorConfig& config() const noexcept { return config_; }
    [[nodiscard]] const affect::AlignmentPolicy& policy() const noexcept { return config_.policy; }
    [[nodiscard]] const SentimentFn& sentiment_fn() const noexcept { return sentiment_fn_; }

    /// Throws EmptyRepository; UnknownStory if story_id names nothing.
    [[nodiscard]] SessionState start_session(std::optional<UserProfile> preset = std::nullopt,
                                             std::optional<std::string> story_id = std::nullopt) const;

    /// Records the utterance (if any), fills slots, and once orientation and
    /// salient issue are known selects the story and persona. Propagates
    /// story::NoEligibleStory.
    [[nodiscard]] OnboardingReply onboarding_step(SessionState& state, std::optional<std::string_view> utterance,
                                                  std::int64_t t_ms) const;

    /// Decides what follows the segment at state.cursor. Rule order: queued user
    /// speech, then streak bookkeeping, then inattention before mismatch.
    [[nodiscard]] Action advance_segment(SessionState& state, const affect::SegmentAffectSummary& summary,
                                         const affect::AlignmentVerdict& verdict) const;

    [[nodiscard]] SupervisorOutcome apply_supervisor_verdict(SessionState& state,
                                                             const gateway::SupervisorVerdict& verdict) const;

    /// A narration line was delivered: records it and opens the window.
    void narration_delivered(SessionState& state, std::string text, std::int64_t t_ms) const;
    /// An intervention question was delivered.
    void question_delivered(SessionState& state, std::string text, std::int64_t t_ms) const;
    /// User speech while narrating is recorded and queued for the next boundary;
    /// while intervening it is only recorded (the caller then asks the supervisor).
    void receive_utterance(SessionState& state, std::string text, std::int64_t t_ms) const;

    void abort(SessionState& state) const noexcept;

  private:
    [[nodiscard]] PromptEnvelope begin_story(SessionState& state) const;
    [[nodiscard]] Action finish_intervention(SessionState& state) const;

    OrchestratorConfig config_;
    std::shared_ptr<const SlotExtractor> extractor_;
    SentimentFn sentiment_fn_;
};

/// Slot questions asked during onboarding, in order.
[[nodiscard]] std::string_view orientation_question() noexcept;
[[nodiscard]] std::string_view issue_question() noexcept;

} // namespace beatline::orchestrator
