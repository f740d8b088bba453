// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/orchestrator/orchestrator.hpp"

#include "beatline/orchestrator/prompts.hpp"
#include "beatline/story/selection.hpp"

#include <algorithm>

namespace beatline::orchestrator {

namespace {

constexpr std::string_view kGreeting =
    "Hi! I'm going to tell you a story, one short part at a time, and you can talk to me whenever you like. ";
constexpr std::string_view kOrientationQuestion =
    "Before we start, how would you describe your political views? For example, do you lean Democrat or "
    "Republican?";
constexpr std::string_view kIssueQuestion = "Which social or political issue matters most to you right now?";

} // namespace

std::string_view orientation_question() noexcept { return kOrientationQuestion; }
std::string_view issue_question() noexcept { return kIssueQuestion; }

void record_turn(SessionState& state, Speaker speaker, std::string text, std::int64_t t_ms,
                 const SentimentFn& sentiment_fn) {
    ConversationTurn turn;
    turn.turn_index = static_cast<int>(state.history.size()) + 1;
    turn.speaker = speaker;
    turn.t_ms = t_ms;
    if (speaker == Speaker::User && sentiment_fn) {
        turn.sentiment = sentiment_fn(text);
    }
    turn.text = std::move(text);
    state.history.push_back(std::move(turn));
}

Orchestrator::Orchestrator(OrchestratorConfig config, std::shared_ptr<const SlotExtractor> extractor,
                           SentimentFn sentiment_fn)
    : config_(std::move(config)), extractor_(std::move(extractor)), sentiment_fn_(std::move(sentiment_fn)) {
    config_.policy.validate();
    if (config_.intervention_turn_cap < 0) {
        throw std::invalid_argument("intervention_turn_cap must be >= 0");
    }
    if (!extractor_) {
        extractor_ = std::make_shared<KeywordSlotExtractor>();
    }
}

SessionState Orchestrator::start_session(std::optional<UserProfile> preset, std::optional<std::string> story_id) const {
    if (!config_.repository || config_.repository->empty()) {
        throw EmptyRepository();
    }
    if (story_id) {
        const auto& repo = *config_.repository;
        const bool known = std::any_of(repo.begin(), repo.end(),
                                       [&](const StoryOutline& o) { return o.story_id == *story_id; });
        if (!known) {
            throw UnknownStory(*story_id);
        }
    }
    SessionState state;
    if (preset) {
        state.profile = std::move(*preset);
    }
    state.requested_story_id = std::move(story_id);
    return state;
}

OnboardingReply Orchestrator::onboarding_step(SessionState& state, std::optional<std::string_view> utterance,
                                              std::int64_t t_ms) const {
    if (state.phase != Phase::Onboarding) {
        throw WrongPhase("onboarding_step", state.phase);
    }
    SessionState next = state;
    const bool first_contact = next.history.empty();
    if (utterance) {
        record_turn(next, Speaker::User, std::string(*utterance), t_ms, sentiment_fn_);
        merge(next.profile, extractor_->extract(*utterance));
    }

    if (next.profile.ready_for_selection()) {
        auto envelope = begin_story(next);
        state = std::move(next);
        return envelope;
    }

    std::string question;
    if (first_contact) {
        question = kGreeting;
    }
    question += next.profile.orientation ? kIssueQuestion : kOrientationQuestion;
    record_turn(next, Speaker::Narrator, question, t_ms, sentiment_fn_);
    state = std::move(next);
    return SlotQuestion{std::move(question)};
}

PromptEnvelope Orchestrator::begin_story(SessionState& state) const {
    const auto& repo = *config_.repository;
    const StoryOutline* chosen = nullptr;
    if (state.requested_story_id) {
        for (const auto& o : repo) {
            if (o.story_id == *state.requested_story_id) {
                chosen = &o;
            }
        }
        if (chosen == nullptr) {
            throw UnknownStory(*state.requested_story_id);
        }
    } else {
        chosen = &story::select_story(state.profile, repo);
    }
    state.outline = *chosen;
    state.persona = story::select_persona(state.profile, *chosen);
    state.cursor = 1;
    state.mode_next = NarrationMode::Baseline;
    state.phase = Phase::AwaitingGeneration;
    return build_narrator_prompt(state, state.outline->segment(1), NarrationMode::Baseline);
}

Action Orchestrator::advance_segment(SessionState& state, const affect::SegmentAffectSummary& summary,
                                     const affect::AlignmentVerdict& verdict) const {
    if (state.phase != Phase::Narrating) {
        throw WrongPhase("advance_segment", state.phase);
    }
    if (summary.segment_index != state.cursor) {
        throw std::invalid_argument("summary is for segment " + std::to_string(summary.segment_index) +
                                    " but the cursor is at " + std::to_string(state.cursor));
    }

    if (!state.queued_utterances.empty()) {
        state.phase = Phase::Intervening;
        state.intervention_cause = InterventionCause::UserInterrupt;
        state.dialogue_turns_in_intervention = 0;
        ++state.interventions;
        return Intervene{InterventionCause::UserInterrupt};
    }

    const auto& policy = config_.policy;
    state.inattention_streak = affect::is_inattentive(summary, policy) ? state.inattention_streak + 1 : 0;
    state.mismatch_streak = verdict.aligned() ? 0 : state.mismatch_streak + 1;

    std::optional<InterventionCause> cause;
    if (state.inattention_streak >= policy.consecutive_limit) {
        cause = InterventionCause::Inattention;
    } else if (state.mismatch_streak >= policy.consecutive_limit) {
        cause = InterventionCause::EmotionMismatch;
    }
    if (cause) {
        state.phase = Phase::Intervening;
        state.intervention_cause = cause;
        state.dialogue_turns_in_intervention = 0;
        ++state.interventions;
        return Intervene{*cause};
    }

    const auto mode = (state.inattention_streak > 0 || state.mismatch_streak > 0) ? NarrationMode::Emotive
                                                                                 : NarrationMode::Baseline;
    state.mode_next = mode;
    const int next = state.cursor + 1;
    if (next > state.segment_count()) {
        state.cursor = state.segment_count() + 1;
        state.phase = Phase::Ended;
        return EndStory{};
    }
    state.cursor = next;
    state.phase = Phase::AwaitingGeneration;
    return Proceed{next, mode};
}

SupervisorOutcome Orchestrator::apply_supervisor_verdict(SessionState& state,
                                                         const gateway::SupervisorVerdict& verdict) const {
    if (state.phase != Phase::Intervening) {
        throw WrongPhase("apply_supervisor_verdict", state.phase);
    }
    if (!verdict.returns_to_story()) {
        if (state.dialogue_turns_in_intervention + 1 <= config_.intervention_turn_cap) {
            ++state.dialogue_turns_in_intervention;
            return {std::nullopt, false};
        }
        return {finish_intervention(state), true};
    }
    return {finish_intervention(state), false};
}

Action Orchestrator::finish_intervention(SessionState& state) const {
    const auto cause = state.intervention_cause.value_or(InterventionCause::EmotionMismatch);
    const auto last_user = std::find_if(state.history.rbegin(), state.history.rend(),
                                        [](const ConversationTurn& t) { return t.speaker == Speaker::User; });
    const bool repeat = cause == InterventionCause::Inattention && last_user != state.history.rend() &&
                        is_affirmative_repeat(last_user->text);

    state.mismatch_streak = 0;
    state.inattention_streak = 0;
    state.dialogue_turns_in_intervention = 0;
    state.queued_utterances.clear();
    state.intervention_cause.reset();
    state.mode_next = cause == InterventionCause::EmotionMismatch ? NarrationMode::Emotive : NarrationMode::Baseline;

    if (repeat) {
        state.mode_next = NarrationMode::Baseline;
        state.phase = Phase::AwaitingGeneration;
        return RepeatSegment{state.cursor};
    }
    const int next = state.cursor + 1;
    if (next > state.segment_count()) {
        state.cursor = state.segment_count() + 1;
        state.phase = Phase::Ended;
        return EndStory{};
    }
    state.cursor = next;
    state.phase = Phase::AwaitingGeneration;
    return Proceed{next, state.mode_next};
}

void Orchestrator::narration_delivered(SessionState& state, std::string text, std::int64_t t_ms) const {
    if (state.phase != Phase::AwaitingGeneration) {
        throw WrongPhase("narration_delivered", state.phase);
    }
    record_turn(state, Speaker::Narrator, std::move(text), t_ms, sentiment_fn_);
    state.phase = Phase::Narrating;
}

void Orchestrator::question_delivered(SessionState& state, std::string text, std::int64_t t_ms) const {
    if (state.phase != Phase::Intervening) {
        throw WrongPhase("question_delivered", state.phase);
    }
    record_turn(state, Speaker::Narrator, std::move(text), t_ms, sentiment_fn_);
}

void Orchestrator::receive_utterance(SessionState& state, std::string text, std::int64_t t_ms) const {
    switch (state.phase) {
    case Phase::Narrating:
    case Phase::AwaitingGeneration:
        state.queued_utterances.push_back(text);
        record_turn(state, Speaker::User, std::move(text), t_ms, sentiment_fn_);
        return;
    case Phase::Intervening:
        record_turn(state, Speaker::User, std::move(text), t_ms, sentiment_fn_);
        return;
    case Phase::Onboarding:
    case Phase::Ended:
        break;
    }
    throw WrongPhase("receive_utterance", state.phase);
}

void Orchestrator::abort(SessionState& state) const noexcept {
    state.phase = Phase::Ended;
    state.aborted = true;
}

} // namespace beatline::orchestrator
