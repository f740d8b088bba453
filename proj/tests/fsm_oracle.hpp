// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Drives the orchestrator through a synthetic story where each segment is
// either good or bad for one cause, and compares against a rescanning oracle.

#include "beatline/gateway/verdict.hpp"
#include "beatline/orchestrator/orchestrator.hpp"

#include <string>
#include <vector>

namespace beatline::testing {

enum class BadCause { Mismatch, Inattention };

struct FsmRun {
    std::vector<int> interventions;      // segment after which each intervention fired
    std::vector<orchestrator::NarrationMode> modes;  // mode each segment was narrated in (1..n)
    std::vector<int> mismatch_after;     // streak values after each boundary
    std::vector<int> inattention_after;
    bool ended = false;
};

inline story::StoryOutline flat_outline(int n) {
    story::StoryOutline o;
    o.story_id = "flat";
    o.issue = "climate";
    o.persona.name = "Pat";
    o.persona.orientation = story::Orientation::Republican;
    for (int i = 1; i <= n; ++i) {
        o.segments.push_back({i, "Segment " + std::to_string(i) + " text. More text.", story::EmotionCategory::Neutral,
                              "Neutral"});
    }
    return o;
}

inline orchestrator::Orchestrator flat_orchestrator(int n, int cap = 5) {
    orchestrator::OrchestratorConfig cfg;
    cfg.repository = std::make_shared<const std::vector<story::StoryOutline>>(1, flat_outline(n));
    cfg.intervention_turn_cap = cap;
    return orchestrator::Orchestrator(cfg, nullptr, [](std::string_view) { return 0.0; });
}

/// Narrating state at segment 1 with a complete preset profile.
inline orchestrator::SessionState narrating_state(const orchestrator::Orchestrator& orch) {
    story::UserProfile p;
    p.orientation = story::Orientation::Democrat;
    p.salient_issue = "climate";
    auto state = orch.start_session(p);
    (void)orch.onboarding_step(state, std::nullopt, 0);
    orch.narration_delivered(state, "narration 1", 0);
    return state;
}

/// bad[i] says whether segment i+1 is bad for the cause.
inline FsmRun run_fsm(const std::vector<bool>& bad, BadCause cause) {
    using namespace orchestrator;
    const int n = static_cast<int>(bad.size());
    const auto orch = flat_orchestrator(n);
    auto state = narrating_state(orch);
    FsmRun run;
    run.modes.push_back(NarrationMode::Baseline);
    std::int64_t t = 0;
    for (int seg = 1; seg <= n; ++seg) {
        const bool b = bad[static_cast<std::size_t>(seg - 1)];
        const affect::SegmentAffectSummary s{
            seg, {}, (cause == BadCause::Inattention && b) ? 0.0 : 1.0, 10};
        const affect::AlignmentVerdict v{
            (cause == BadCause::Mismatch && b) ? affect::Alignment::Mismatch : affect::Alignment::Aligned, 0.0};
        auto action = orch.advance_segment(state, s, v);
        run.mismatch_after.push_back(state.mismatch_streak);
        run.inattention_after.push_back(state.inattention_streak);
        if (std::holds_alternative<Intervene>(action)) {
            run.interventions.push_back(seg);
            orch.question_delivered(state, "question", ++t);
            action = *orch.apply_supervisor_verdict(
                            state, {gateway::SupervisorVerdict::Kind::ReturnToStory, "test"})
                          .action;
        }
        if (const auto* p = std::get_if<Proceed>(&action)) {
            run.modes.push_back(p->mode);
            orch.narration_delivered(state, "narration", ++t);
        } else if (std::holds_alternative<EndStory>(action)) {
            run.ended = state.phase == Phase::Ended;
        } else {
            return run;  // repeats cannot happen without a user reply
        }
    }
    return run;
}

/// From scratch: at each boundary count the bad run back to the previous
/// intervention; three or more fires.
struct OracleRun {
    std::vector<int> interventions;
    std::vector<orchestrator::NarrationMode> modes;
};

inline OracleRun fsm_oracle(const std::vector<bool>& bad, BadCause cause, int limit = 3) {
    using orchestrator::NarrationMode;
    OracleRun out;
    out.modes.push_back(NarrationMode::Baseline);
    const int n = static_cast<int>(bad.size());
    int last_reset = 0;
    for (int seg = 1; seg <= n; ++seg) {
        int run = 0;
        for (int k = seg; k > last_reset && bad[static_cast<std::size_t>(k - 1)]; --k) ++run;
        NarrationMode next_mode = run > 0 ? NarrationMode::Emotive : NarrationMode::Baseline;
        if (run >= limit) {
            out.interventions.push_back(seg);
            last_reset = seg;
            next_mode = cause == BadCause::Mismatch ? NarrationMode::Emotive : NarrationMode::Baseline;
        }
        if (seg < n) out.modes.push_back(next_mode);
    }
    return out;
}

inline std::vector<bool> bits_of(unsigned mask, int n) {
    std::vector<bool> out;
    for (int i = 0; i < n; ++i) out.push_back(((mask >> i) & 1U) != 0);
    return out;
}

} // namespace beatline::testing
