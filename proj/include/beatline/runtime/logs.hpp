// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "beatline/affect/alignment.hpp"
#include "beatline/orchestrator/types.hpp"

#include <cstdio>
#include <filesystem>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace beatline::runtime {

class SinkUnavailable : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class MalformedLogLine : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Rounds to the 6 decimals the log stores, so an entry equals its re-parse.
[[nodiscard]] double quantize(double x) noexcept;

/// One narrated segment. Repeats log again with the same index and repeat=true.
struct SegmentLogEntry {
    std::string session_id;
    int segment_index = 0;
    bool repeat = false;
    std::array<double, story::kEmotionCount> avg{};
    double attention_fraction = 0.0;
    int frame_count = 0;
    affect::Alignment verdict = affect::Alignment::Aligned;
    std::optional<double> delta;
    std::string action;  // orchestrator::to_string(Action)
    orchestrator::NarrationMode mode = orchestrator::NarrationMode::Baseline;
    std::int64_t t_ms = 0;  // window close time

    /// Builds a quantized entry.
    [[nodiscard]] static SegmentLogEntry make(std::string session_id, const affect::SegmentAffectSummary& summary,
                                              bool repeat, const affect::AlignmentVerdict& verdict,
                                              const orchestrator::Action& action, orchestrator::NarrationMode mode,
                                              std::int64_t t_ms);

    bool operator==(const SegmentLogEntry&) const = default;
};

/// One JSON object, numbers in 6-decimal fixed notation, fixed key order:
/// session, segment, repeat, avg{happy..neutral}, attention_fraction, frames,
/// verdict, delta, action, mode, t_ms.
[[nodiscard]] std::string format_segment_log(const SegmentLogEntry& entry);
/// Throws MalformedLogLine.
[[nodiscard]] SegmentLogEntry parse_segment_log(std::string_view line);

/// {"session","turn","speaker","text","sentiment","t_ms"}; sentiment is null
/// for non-user turns.
[[nodiscard]] std::string format_turn_log(std::string_view session_id, const orchestrator::ConversationTurn& turn);

/// Append-only line sink. Implementations serialize concurrent appends.
class LogSink {
  public:
    virtual ~LogSink() = default;
    /// Appends line plus '\n'. Throws SinkUnavailable.
    virtual void append_line(std::string_view line) = 0;
    [[nodiscard]] virtual std::size_t lines_written() const = 0;
};

/// Appends to a file, flushing after every line.
class FileSink final : public LogSink {
  public:
    /// Throws SinkUnavailable if the file cannot be opened for append.
    explicit FileSink(const std::filesystem::path& path);
    ~FileSink() override;
    FileSink(const FileSink&) = delete;
    FileSink& operator=(const FileSink&) = delete;

    void append_line(std::string_view line) override;
    [[nodiscard]] std::size_t lines_written() const override;
    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

  private:
    std::filesystem::path path_;
    std::FILE* file_ = nullptr;
    mutable std::mutex mutex_;
    std::size_t lines_ = 0;
};

class MemorySink final : public LogSink {
  public:
    void append_line(std::string_view line) override;
    [[nodiscard]] std::size_t lines_written() const override;
    [[nodiscard]] std::vector<std::string> lines() const;

  private:
    mutable std::mutex mutex_;
    std::vector<std::string> lines_;
};

struct LogAck {
    std::size_t line_number = 0;  // 1-based position in the sink
};

/// Appends exactly one line. Throws SinkUnavailable.
LogAck append_segment_log(const SegmentLogEntry& entry, LogSink& sink);

} // namespace beatline::runtime
