// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/runtime/bench.hpp"

#include "beatline/runtime/protocol.hpp"
#include "beatline/runtime/session_engine.hpp"

#include <fmt/format.h>

#include <chrono>
#include <random>

namespace beatline::runtime {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

} // namespace

BenchResult run_ingestion_bench(const story::StoryOutline& outline, const BenchOptions& options) {
    auto repository = std::make_shared<const std::vector<story::StoryOutline>>(1, outline);
    EngineConfig config;
    auto context = build_context(config, repository);
    SessionEngine engine("bench", std::move(context), std::make_shared<MemorySink>(), std::make_shared<MemorySink>());

    story::UserProfile profile;
    const auto narrator = outline.narrator_orientation().value_or(story::Orientation::Other);
    profile.orientation = narrator == story::Orientation::Democrat ? story::Orientation::Republican
                                                                   : story::Orientation::Democrat;
    profile.salient_issue = outline.issue.empty() ? "climate" : outline.issue;

    auto expect_ok = [](const std::vector<std::string>& replies) {
        for (const auto& r : replies) {
            if (r.rfind(R"({"type":"error")", 0) == 0) {
                throw std::runtime_error("bench session rejected a message: " + r);
            }
        }
    };
    expect_ok(engine.handle_line(serialize_client_message(StartMessage{profile, outline.story_id})));

    // Pre-render the frame lines so only ingestion is timed.
    std::mt19937 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::int64_t t = 0;
    BenchResult result;
    double ingest_ms = 0.0;
    double boundary_total = 0.0;
    for (int seg = 1; seg <= static_cast<int>(outline.segment_count()) && !engine.finished(); ++seg) {
        std::vector<std::string> lines;
        lines.reserve(static_cast<std::size_t>(options.frames_per_segment));
        for (int i = 0; i < options.frames_per_segment; ++i) {
            affect::EmotionVector::Components c{};
            double sum = 0;
            for (auto& x : c) {
                x = unit(rng);
                sum += x;
            }
            for (auto& x : c) x /= sum;
            affect::AffectFrame frame;
            frame.t_ms = t;
            frame.probs = affect::EmotionVector(c);
            frame.face = affect::FaceObservation{320, 240, 640, 480};
            lines.push_back(serialize_client_message(FrameMessage{frame}));
            t += options.frame_interval_ms;
        }

        const auto start = Clock::now();
        for (const auto& l : lines) {
            expect_ok(engine.handle_line(l));
        }
        ingest_ms += elapsed_ms(start);
        result.frames += options.frames_per_segment;

        const auto end_line = serialize_client_message(SegmentEndMessage{t});
        const auto b0 = Clock::now();
        const auto replies = engine.handle_line(end_line);
        const double b = elapsed_ms(b0);
        expect_ok(replies);
        boundary_total += b;
        result.max_boundary_ms = std::max(result.max_boundary_ms, b);
        ++result.segments;

        // Interventions wait for a reply; answer so the story keeps going.
        while (!engine.finished() && engine.state().phase == orchestrator::Phase::Intervening) {
            expect_ok(engine.handle_line(serialize_client_message(UtteranceMessage{"No, we can continue.", t})));
        }
    }
    result.frames_per_second = ingest_ms > 0 ? static_cast<double>(result.frames) / (ingest_ms / 1000.0) : 0.0;
    result.mean_boundary_ms = result.segments > 0 ? boundary_total / result.segments : 0.0;
    return result;
}

std::string format_bench(const BenchResult& r) {
    return fmt::format("segments={} frames={} ingest_fps={:.0f} boundary_ms_max={:.3f} boundary_ms_mean={:.3f}",
                       r.segments, r.frames, r.frames_per_second, r.max_boundary_ms, r.mean_boundary_ms);
}

} // namespace beatline::runtime
