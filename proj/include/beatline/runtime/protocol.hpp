// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "beatline/affect/emotion_vector.hpp"
#include "beatline/orchestrator/types.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace beatline::runtime {

/// One JSON object per line in both directions.
///
/// client -> server
///   {"type":"start","profile":{...}?,"story_id":"..."?}
///   {"type":"utterance","text":"...","t_ms":N}
///   {"type":"frame","t_ms":N,"probs":{"happy":x,...,"neutral":x},"face":{"cx":N,"cy":N,"frame_w":N,"frame_h":N}|null}
///   {"type":"segment_end","t_ms":N}      closes the open narration window
///   {"type":"end"}
///
/// server -> client
///   {"type":"onboarding_question","text":"..."}
///   {"type":"narration","segment":N,"mode":"baseline"|"emotive","text":"..."}
///   {"type":"question","cause":"emotion"|"attention"|"interrupt","text":"..."}
///   {"type":"segment_summary",...segment log fields...}
///   {"type":"error","code":"...","detail":"..."}
///   {"type":"end","reason":"completed"|"aborted"}
///
/// Profile keys: orientation, salient_issue (alias issue), age_band, gender,
/// race_ethnicity. All seven probability keys are required.

class ProtocolError : public std::runtime_error {
  public:
    ProtocolError(std::string code, const std::string& detail)
        : std::runtime_error(detail), code_(std::move(code)) {}
    [[nodiscard]] const std::string& code() const noexcept { return code_; }

  private:
    std::string code_;
};

namespace error_code {
inline constexpr const char* kBadJson = "bad_json";
inline constexpr const char* kBadMessage = "bad_message";
inline constexpr const char* kUnknownType = "unknown_type";
inline constexpr const char* kBadFrame = "bad_frame";
inline constexpr const char* kNoActiveSession = "no_active_session";
inline constexpr const char* kAlreadyStarted = "already_started";
inline constexpr const char* kSessionEnded = "session_ended";
inline constexpr const char* kNoOpenSegment = "no_open_segment";
inline constexpr const char* kEmptyWindow = "empty_window";
inline constexpr const char* kUnknownStory = "unknown_story";
inline constexpr const char* kNoEligibleStory = "no_eligible_story";
inline constexpr const char* kInternal = "internal";
} // namespace error_code

struct StartMessage {
    std::optional<story::UserProfile> profile;
    std::optional<std::string> story_id;
};
struct UtteranceMessage {
    std::string text;
    std::int64_t t_ms = 0;
};
struct FrameMessage {
    affect::AffectFrame frame;
};
struct SegmentEndMessage {
    std::int64_t t_ms = 0;
};
struct EndMessage {};

using ClientMessage = std::variant<StartMessage, UtteranceMessage, FrameMessage, SegmentEndMessage, EndMessage>;

/// Throws ProtocolError; never partially accepts a message.
[[nodiscard]] ClientMessage parse_client_message(std::string_view line);

/// Inverse of parse_client_message (used to write traces).
[[nodiscard]] std::string serialize_client_message(const ClientMessage& message);

[[nodiscard]] std::string onboarding_question_message(std::string_view text);
[[nodiscard]] std::string narration_message(int segment, orchestrator::NarrationMode mode, std::string_view text);
[[nodiscard]] std::string question_message(orchestrator::InterventionCause cause, std::string_view text);
/// log_line is a formatted segment log record; its fields are inlined after "type".
[[nodiscard]] std::string segment_summary_message(std::string_view log_line);
[[nodiscard]] std::string error_message(std::string_view code, std::string_view detail);
[[nodiscard]] std::string end_message(bool completed);

} // namespace beatline::runtime
