// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "beatline/story/outline.hpp"

#include <cstdint>
#include <string>

namespace beatline::runtime {

struct BenchOptions {
    int frames_per_segment = 1000;
    /// Mock-clock spacing between frames; 1 ms gives a 1000 frames/s stream.
    std::int64_t frame_interval_ms = 1;
    std::uint32_t seed = 7;
};

struct BenchResult {
    int segments = 0;
    std::int64_t frames = 0;
    /// Wall-clock ingestion rate over every frame message (parse + accumulate).
    double frames_per_second = 0.0;
    /// Wall-clock time to handle each segment_end: summary, verdict, decision,
    /// log append and the next mock narration.
    double max_boundary_ms = 0.0;
    double mean_boundary_ms = 0.0;
};

/// Replays one mock-backend session over outline with synthetic frames sent as
/// protocol lines, timing ingestion and every segment boundary.
[[nodiscard]] BenchResult run_ingestion_bench(const story::StoryOutline& outline, const BenchOptions& options = {});

[[nodiscard]] std::string format_bench(const BenchResult& r);

} // namespace beatline::runtime
