// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/runtime/transcript.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <stdexcept>

namespace beatline::runtime {

std::string_view name(EventKind k) noexcept {
    switch (k) {
    case EventKind::Onboarding: return "onboarding";
    case EventKind::User: return "user";
    case EventKind::Narration: return "narration";
    case EventKind::Question: return "question";
    case EventKind::Verdict: return "verdict";
    case EventKind::Action: return "action";
    case EventKind::Error: return "error";
    case EventKind::End: return "end";
    }
    return "?";
}

void SessionTranscript::add(std::int64_t t_ms, EventKind kind, std::string payload) {
    if (ended()) {
        throw std::logic_error("transcript of " + session_id_ + " already ended");
    }
    events_.push_back({t_ms, kind, std::move(payload)});
}

void SessionTranscript::end(std::int64_t t_ms, bool completed) {
    if (!ended()) {
        events_.push_back({t_ms, EventKind::End, completed ? "completed" : "aborted"});
    }
}

std::size_t SessionTranscript::count(EventKind kind) const noexcept {
    return static_cast<std::size_t>(
        std::count_if(events_.begin(), events_.end(), [kind](const auto& e) { return e.kind == kind; }));
}

std::string SessionTranscript::render() const {
    std::string out = "# session " + session_id_ + "\n";
    for (const auto& e : events_) {
        std::string payload;
        payload.reserve(e.payload.size());
        for (const char c : e.payload) {
            if (c == '\n') {
                payload += "\\n";
            } else if (c != '\r') {
                payload += c;
            }
        }
        out += fmt::format("{:>8} {:<10} {}\n", e.t_ms, name(e.kind), payload);
    }
    return out;
}

} // namespace beatline::runtime
