// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "beatline/affect/aggregate.hpp"
#include "beatline/gateway/backend.hpp"
#include "beatline/gateway/guardrail.hpp"
#include "beatline/orchestrator/orchestrator.hpp"
#include "beatline/runtime/config.hpp"
#include "beatline/runtime/logs.hpp"
#include "beatline/runtime/protocol.hpp"
#include "beatline/runtime/transcript.hpp"

#include <memory>
#include <string>
#include <vector>

namespace beatline::runtime {

/// Shared, read-only pieces used by every session.
struct EngineContext {
    std::shared_ptr<const orchestrator::Orchestrator> orchestrator;
    std::shared_ptr<gateway::GenerationBackend> backend;
    std::shared_ptr<const gateway::Guardrail> guardrail;  // optional
    /// > 0: a frame this long after narration closes the window, in addition
    /// to explicit segment_end messages.
    std::int64_t segment_window_ms = 0;
};

/// Loads the lexicon and guardrail named in config (built-ins when unset) and
/// builds the orchestrator. A null backend means make_backend(config).
[[nodiscard]] EngineContext build_context(const EngineConfig& config,
                                          std::shared_ptr<const std::vector<story::StoryOutline>> repository,
                                          std::shared_ptr<gateway::GenerationBackend> backend = nullptr);

/// Drives one session from client messages. Not thread-safe: the caller feeds
/// messages in order from a single thread. Time comes only from message
/// timestamps, so a replay is deterministic.
class SessionEngine {
  public:
    SessionEngine(std::string session_id, EngineContext context, std::shared_ptr<LogSink> segment_log,
                  std::shared_ptr<LogSink> turn_log);

    /// Parses and handles one protocol line, returning the server messages to
    /// send. A rejected message yields a single error message and leaves the
    /// session as it was.
    [[nodiscard]] std::vector<std::string> handle_line(std::string_view line);
    [[nodiscard]] std::vector<std::string> handle(const ClientMessage& message);

    /// Connection lost: ends the transcript with an abort marker and flushes the
    /// turn log. No-op once the session has ended.
    void disconnect();

    [[nodiscard]] const std::string& session_id() const noexcept { return session_id_; }
    [[nodiscard]] bool started() const noexcept { return core_.started; }
    [[nodiscard]] bool finished() const noexcept { return core_.transcript.ended(); }
    [[nodiscard]] const orchestrator::SessionState& state() const noexcept { return core_.state; }
    [[nodiscard]] const SessionTranscript& transcript() const noexcept { return core_.transcript; }
    /// Frames that arrived while no narration window was open.
    [[nodiscard]] std::size_t dropped_frames() const noexcept { return core_.dropped_frames; }

  private:
    struct Core {
        bool started = false;
        orchestrator::SessionState state;
        SessionTranscript transcript;
        affect::SegmentAccumulator accumulator;
        std::optional<affect::SegmentAffectSummary> prev_summary;
        story::EmotionCategory prev_expected = story::EmotionCategory::Neutral;
        orchestrator::NarrationMode window_mode = orchestrator::NarrationMode::Baseline;
        bool window_repeat = false;
        std::int64_t window_open_ms = 0;
        std::int64_t clock_ms = 0;
        std::size_t turns_flushed = 0;
        std::size_t dropped_frames = 0;
    };
    using Out = std::vector<std::string>;

    void on_start(const StartMessage& m, Out& out);
    void on_utterance(const UtteranceMessage& m, Out& out);
    void on_frame(const FrameMessage& m, Out& out);
    [[nodiscard]] bool closes_window(std::int64_t t_ms) const noexcept;
    void on_segment_end(const SegmentEndMessage& m, Out& out);
    void on_end(Out& out);

    void advance_clock(std::int64_t t_ms);
    void onboarding_reply(const orchestrator::OnboardingReply& reply, Out& out);
    void close_window(std::int64_t t_ms, Out& out);
    void perform(const orchestrator::Action& action, Out& out);
    void narrate(int segment, orchestrator::NarrationMode mode, bool repeat, Out& out);
    void ask(const orchestrator::PromptEnvelope& envelope, orchestrator::InterventionCause cause, Out& out);
    void finish(bool completed, Out& out);
    [[nodiscard]] std::string produce(const orchestrator::PromptEnvelope& envelope);
    void flush_turns();

    std::string session_id_;
    EngineContext ctx_;
    std::shared_ptr<LogSink> segment_log_;
    std::shared_ptr<LogSink> turn_log_;
    Core core_;
};

} // namespace beatline::runtime
