// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/runtime/session_engine.hpp"

#include "beatline/affect/sentiment.hpp"
#include "beatline/orchestrator/prompts.hpp"
#include "beatline/story/errors.hpp"

#include <fmt/format.h>

namespace beatline::runtime {

using namespace orchestrator;

namespace {

class Rejected : public std::runtime_error {
  public:
    Rejected(std::string code, const std::string& detail) : std::runtime_error(detail), code_(std::move(code)) {}
    [[nodiscard]] const std::string& code() const noexcept { return code_; }

  private:
    std::string code_;
};

} // namespace

EngineContext build_context(const EngineConfig& config,
                            std::shared_ptr<const std::vector<story::StoryOutline>> repository,
                            std::shared_ptr<gateway::GenerationBackend> backend) {
    auto lexicon = std::make_shared<const affect::Lexicon>(
        config.lexicon.empty() ? affect::default_lexicon() : affect::load_lexicon(config.lexicon));
    SentimentFn sentiment = [lexicon](std::string_view text) { return affect::sentiment_score(text, *lexicon); };

    OrchestratorConfig oc;
    oc.repository = std::move(repository);
    oc.policy = config.policy;
    oc.intervention_turn_cap = config.intervention_turn_cap;

    EngineContext ctx;
    ctx.orchestrator = std::make_shared<const Orchestrator>(std::move(oc), nullptr, std::move(sentiment));
    ctx.backend = backend ? std::move(backend) : make_backend(config);
    ctx.guardrail = std::make_shared<const gateway::Guardrail>(
        config.guardrail.empty() ? gateway::Guardrail::defaults() : gateway::Guardrail::from_file(config.guardrail));
    ctx.segment_window_ms = config.segment_window_ms;
    return ctx;
}

SessionEngine::SessionEngine(std::string session_id, EngineContext context, std::shared_ptr<LogSink> segment_log,
                             std::shared_ptr<LogSink> turn_log)
    : session_id_(std::move(session_id)),
      ctx_(std::move(context)),
      segment_log_(std::move(segment_log)),
      turn_log_(std::move(turn_log)) {
    if (!ctx_.orchestrator || !ctx_.backend || !segment_log_ || !turn_log_) {
        throw std::invalid_argument("session engine needs an orchestrator, a backend and both log sinks");
    }
    core_.transcript = SessionTranscript(session_id_);
    core_.accumulator = affect::SegmentAccumulator(ctx_.orchestrator->policy());
}

std::vector<std::string> SessionEngine::handle_line(std::string_view line) {
    ClientMessage message;
    try {
        message = parse_client_message(line);
    } catch (const ProtocolError& e) {
        return {error_message(e.code(), e.what())};
    }
    return handle(message);
}

std::vector<std::string> SessionEngine::handle(const ClientMessage& message) {
    Out out;
    // Frames inside an open window only touch the accumulator, which add()
    // leaves unchanged when it throws; everything else runs on a snapshot.
    if (const auto* frame = std::get_if<FrameMessage>(&message); frame && !closes_window(frame->frame.t_ms)) {
        try {
            on_frame(*frame, out);
        } catch (const Rejected& e) {
            return {error_message(e.code(), e.what())};
        } catch (const affect::InvalidObservation& e) {
            return {error_message(error_code::kBadFrame, e.what())};
        }
        return out;
    }

    Core snapshot = core_;
    try {
        std::visit(
            [&](const auto& m) {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, StartMessage>) on_start(m, out);
                else if constexpr (std::is_same_v<T, UtteranceMessage>) on_utterance(m, out);
                else if constexpr (std::is_same_v<T, FrameMessage>) on_frame(m, out);
                else if constexpr (std::is_same_v<T, SegmentEndMessage>) on_segment_end(m, out);
                else on_end(out);
            },
            message);
        flush_turns();
    } catch (const Rejected& e) {
        core_ = std::move(snapshot);
        return {error_message(e.code(), e.what())};
    } catch (const affect::InvalidObservation& e) {
        core_ = std::move(snapshot);
        return {error_message(error_code::kBadFrame, e.what())};
    } catch (const std::exception& e) {
        core_ = std::move(snapshot);
        return {error_message(error_code::kInternal, e.what())};
    }
    return out;
}

void SessionEngine::disconnect() {
    if (!core_.started || finished()) {
        return;
    }
    ctx_.orchestrator->abort(core_.state);
    core_.transcript.end(core_.clock_ms, false);
    try {
        flush_turns();
    } catch (const SinkUnavailable&) {
        // Nothing left to report to; the transcript still records the abort.
    }
}

void SessionEngine::advance_clock(std::int64_t t_ms) {
    if (t_ms < core_.clock_ms) {
        throw Rejected(error_code::kBadMessage, fmt::format("t_ms {} is earlier than {}", t_ms, core_.clock_ms));
    }
    core_.clock_ms = t_ms;
}

void SessionEngine::on_start(const StartMessage& m, Out& out) {
    if (core_.started) {
        throw Rejected(error_code::kAlreadyStarted, "session already started");
    }
    try {
        core_.state = ctx_.orchestrator->start_session(m.profile, m.story_id);
    } catch (const UnknownStory& e) {
        throw Rejected(error_code::kUnknownStory, e.what());
    }
    core_.started = true;
    onboarding_reply(ctx_.orchestrator->onboarding_step(core_.state, std::nullopt, core_.clock_ms), out);
}

void SessionEngine::onboarding_reply(const OnboardingReply& reply, Out& out) {
    if (const auto* q = std::get_if<SlotQuestion>(&reply)) {
        core_.transcript.add(core_.clock_ms, EventKind::Onboarding, q->text);
        out.push_back(onboarding_question_message(q->text));
        return;
    }
    const auto& outline = *core_.state.outline;
    core_.transcript.add(core_.clock_ms, EventKind::Action,
                         fmt::format("story {} narrator {} ({})", outline.story_id, core_.state.persona->name,
                                     story::name(*outline.narrator_orientation())));
    narrate(core_.state.cursor, NarrationMode::Baseline, false, out);
}

void SessionEngine::on_utterance(const UtteranceMessage& m, Out& out) {
    if (!core_.started) {
        throw Rejected(error_code::kNoActiveSession, "no active session");
    }
    if (finished()) {
        throw Rejected(error_code::kSessionEnded, "session has ended");
    }
    advance_clock(m.t_ms);
    auto& state = core_.state;
    const auto& orch = *ctx_.orchestrator;

    switch (state.phase) {
    case Phase::Onboarding: {
        core_.transcript.add(m.t_ms, EventKind::User, m.text);
        OnboardingReply reply;
        try {
            reply = orch.onboarding_step(state, m.text, m.t_ms);
        } catch (const story::NoEligibleStory& e) {
            throw Rejected(error_code::kNoEligibleStory, e.what());
        }
        onboarding_reply(reply, out);
        return;
    }
    case Phase::Narrating:
    case Phase::AwaitingGeneration:
        orch.receive_utterance(state, m.text, m.t_ms);
        core_.transcript.add(m.t_ms, EventKind::User, m.text);
        return;
    case Phase::Intervening: {
        orch.receive_utterance(state, m.text, m.t_ms);
        core_.transcript.add(m.t_ms, EventKind::User, m.text);
        const auto verdict = gateway::supervise(state.history, m.text, *ctx_.backend);
        core_.transcript.add(m.t_ms, EventKind::Verdict, fmt::format("supervisor {}", gateway::name(verdict.kind)));
        const auto outcome = orch.apply_supervisor_verdict(state, verdict);
        if (outcome.action) {
            core_.transcript.add(m.t_ms, EventKind::Action,
                                 to_string(*outcome.action) + (outcome.forced_return ? " (turn cap)" : ""));
            perform(*outcome.action, out);
        } else {
            const auto cause = state.intervention_cause.value_or(InterventionCause::EmotionMismatch);
            ask(build_followup_prompt(state), cause, out);
        }
        return;
    }
    case Phase::Ended: throw Rejected(error_code::kSessionEnded, "session has ended");
    }
}

bool SessionEngine::closes_window(std::int64_t t_ms) const noexcept {
    return core_.started && core_.state.phase == Phase::Narrating && ctx_.segment_window_ms > 0 &&
           !core_.accumulator.empty() && t_ms - core_.window_open_ms >= ctx_.segment_window_ms;
}

void SessionEngine::on_frame(const FrameMessage& m, Out& out) {
    if (!core_.started) {
        throw Rejected(error_code::kNoActiveSession, "no active session");
    }
    if (finished()) {
        throw Rejected(error_code::kSessionEnded, "session has ended");
    }
    const auto t = m.frame.t_ms;
    if (t < core_.clock_ms) {
        throw Rejected(error_code::kBadFrame, fmt::format("t_ms {} is earlier than {}", t, core_.clock_ms));
    }
    if (closes_window(t)) {
        core_.clock_ms = t;
        close_window(t, out);
    }
    if (core_.state.phase == Phase::Narrating) {
        core_.accumulator.add(m.frame);
    } else {
        ++core_.dropped_frames;
    }
    core_.clock_ms = t;
}

void SessionEngine::on_segment_end(const SegmentEndMessage& m, Out& out) {
    if (!core_.started) {
        throw Rejected(error_code::kNoActiveSession, "no active session");
    }
    if (finished()) {
        throw Rejected(error_code::kSessionEnded, "session has ended");
    }
    if (core_.state.phase != Phase::Narrating) {
        throw Rejected(error_code::kNoOpenSegment,
                       fmt::format("no narration window is open (phase {})", name(core_.state.phase)));
    }
    if (core_.accumulator.empty()) {
        throw Rejected(error_code::kEmptyWindow,
                       fmt::format("segment {} received no frames", core_.state.cursor));
    }
    advance_clock(m.t_ms);
    close_window(m.t_ms, out);
}

void SessionEngine::on_end(Out& out) {
    if (!core_.started) {
        throw Rejected(error_code::kNoActiveSession, "no active session");
    }
    if (finished()) {
        throw Rejected(error_code::kSessionEnded, "session has ended");
    }
    finish(false, out);
}

void SessionEngine::close_window(std::int64_t t_ms, Out& out) {
    auto& state = core_.state;
    const auto& orch = *ctx_.orchestrator;
    const auto summary = core_.accumulator.summary(state.cursor);
    const auto expected = state.outline->segment(state.cursor).expected_emotion;
    const auto verdict = core_.prev_summary ? affect::evaluate_alignment(*core_.prev_summary, summary,
                                                                          core_.prev_expected, expected, orch.policy())
                                            : affect::opening_verdict();

    const auto action = orch.advance_segment(state, summary, verdict);
    const auto entry =
        SegmentLogEntry::make(session_id_, summary, core_.window_repeat, verdict, action, core_.window_mode, t_ms);
    const auto line = format_segment_log(entry);
    append_segment_log(entry, *segment_log_);
    out.push_back(segment_summary_message(line));

    core_.transcript.add(
        t_ms, EventKind::Verdict,
        fmt::format("segment {} {} delta={} attention={:.6f} frames={}", entry.segment_index, affect::name(entry.verdict),
                    entry.delta ? fmt::format("{:+.6f}", *entry.delta) : "n/a", entry.attention_fraction,
                    entry.frame_count));
    core_.transcript.add(t_ms, EventKind::Action, entry.action);

    core_.prev_summary = summary;
    core_.prev_expected = expected;
    core_.accumulator.reset();
    perform(action, out);
}

void SessionEngine::perform(const Action& action, Out& out) {
    auto& state = core_.state;
    std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, Proceed>) {
                narrate(a.segment, a.mode, false, out);
            } else if constexpr (std::is_same_v<T, RepeatSegment>) {
                narrate(a.segment, state.mode_next, true, out);
            } else if constexpr (std::is_same_v<T, Intervene>) {
                ask(build_intervention_prompt(state, a.cause), a.cause, out);
            } else {
                finish(true, out);
            }
        },
        action);
}

void SessionEngine::narrate(int segment, NarrationMode mode, bool repeat, Out& out) {
    auto& state = core_.state;
    const auto envelope = build_narrator_prompt(state, state.outline->segment(segment), mode);
    auto text = produce(envelope);
    ctx_.orchestrator->narration_delivered(state, text, core_.clock_ms);
    core_.transcript.add(core_.clock_ms, EventKind::Narration,
                         fmt::format("segment {} {}{}: {}", segment, name(mode), repeat ? " repeat" : "", text));
    out.push_back(narration_message(segment, mode, text));
    core_.window_mode = mode;
    core_.window_repeat = repeat;
    core_.window_open_ms = core_.clock_ms;
    core_.accumulator.reset();
}

void SessionEngine::ask(const PromptEnvelope& envelope, InterventionCause cause, Out& out) {
    auto text = produce(envelope);
    ctx_.orchestrator->question_delivered(core_.state, text, core_.clock_ms);
    core_.transcript.add(core_.clock_ms, EventKind::Question, fmt::format("{}: {}", name(cause), text));
    out.push_back(question_message(cause, text));
}

void SessionEngine::finish(bool completed, Out& out) {
    if (!completed) {
        ctx_.orchestrator->abort(core_.state);
    }
    core_.transcript.end(core_.clock_ms, completed);
    out.push_back(end_message(completed));
}

std::string SessionEngine::produce(const PromptEnvelope& envelope) {
    std::string text;
    try {
        text = gateway::generate(envelope, *ctx_.backend).text;
    } catch (const gateway::BackendError& e) {
        core_.transcript.add(core_.clock_ms, EventKind::Error, fmt::format("backend: {}", e.what()));
        return gateway::fallback_text(envelope);
    }
    if (ctx_.guardrail) {
        if (auto hit = ctx_.guardrail->first_match(text)) {
            core_.transcript.add(core_.clock_ms, EventKind::Error, fmt::format("guardrail: {}", *hit));
            return gateway::fallback_text(envelope);
        }
    }
    return text;
}

void SessionEngine::flush_turns() {
    const auto& history = core_.state.history;
    while (core_.turns_flushed < history.size()) {
        turn_log_->append_line(format_turn_log(session_id_, history[core_.turns_flushed]));
        ++core_.turns_flushed;
    }
}

} // namespace beatline::runtime
