// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace beatline::runtime {

enum class EventKind : std::uint8_t { Onboarding, User, Narration, Question, Verdict, Action, Error, End };

[[nodiscard]] std::string_view name(EventKind k) noexcept;

struct TranscriptEvent {
    std::int64_t t_ms = 0;
    EventKind kind = EventKind::End;
    std::string payload;

    bool operator==(const TranscriptEvent&) const = default;
};

/// Ordered record of one session. Ends with exactly one End event.
class SessionTranscript {
  public:
    explicit SessionTranscript(std::string session_id = {}) : session_id_(std::move(session_id)) {}

    /// Throws std::logic_error after the End event.
    void add(std::int64_t t_ms, EventKind kind, std::string payload);
    /// Adds the End event ("completed" or "aborted"); no-op if already ended.
    void end(std::int64_t t_ms, bool completed);

    [[nodiscard]] const std::string& session_id() const noexcept { return session_id_; }
    [[nodiscard]] const std::vector<TranscriptEvent>& events() const noexcept { return events_; }
    [[nodiscard]] bool ended() const noexcept { return !events_.empty() && events_.back().kind == EventKind::End; }
    [[nodiscard]] std::size_t count(EventKind kind) const noexcept;

    /// "# session <id>" then one line per event: "<t_ms> <kind> <payload>",
    /// with newlines in the payload written as "\n".
    [[nodiscard]] std::string render() const;

  private:
    std::string session_id_;
    std::vector<TranscriptEvent> events_;
};

} // namespace beatline::runtime
