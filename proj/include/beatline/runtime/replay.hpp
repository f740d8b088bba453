// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "beatline/runtime/config.hpp"
#include "beatline/runtime/transcript.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace beatline::runtime {

class MalformedTrace : public std::runtime_error {
  public:
    MalformedTrace(int line, const std::string& detail)
        : std::runtime_error("trace line " + std::to_string(line) + ": " + detail), line_(line) {}
    [[nodiscard]] int line() const noexcept { return line_; }

  private:
    int line_;
};

struct TraceRun {
    SessionTranscript transcript;
    std::vector<std::string> server_messages;
    std::filesystem::path segment_log;
    std::filesystem::path turn_log;
    std::filesystem::path transcript_file;
};

/// A trace is a file of client protocol messages, one per line; blank lines
/// and lines starting with '#' are skipped. Any message the session rejects
/// makes the trace malformed. A trace that stops before the story ends is
/// treated as a disconnect.
///
/// The session id is the trace file stem. <id>.segments, <id>.turns and
/// <id>.transcript are written to out_dir, replacing earlier runs of the same
/// trace. backend overrides config.backend when set.
[[nodiscard]] TraceRun run_trace(const std::filesystem::path& story_path, const std::filesystem::path& trace_path,
                                 const EngineConfig& config, const std::filesystem::path& out_dir,
                                 std::shared_ptr<gateway::GenerationBackend> backend = nullptr);

} // namespace beatline::runtime
